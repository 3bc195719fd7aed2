#pragma once

#include "wce/analysis.hpp"
#include "wce/conditional_expectation.hpp"
#include "wce/countable.hpp"
#include "wce/measure.hpp"
#include "wce/operator.hpp"
#include "wce/oracle.hpp"
#include "wce/partition.hpp"
#include "wce/random_instance.hpp"
