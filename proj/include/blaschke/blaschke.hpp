#pragma once

#include "blaschke/decompose.hpp"
#include "blaschke/error.hpp"
#include "blaschke/invariants.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/numerics.hpp"
#include "blaschke/poncelet.hpp"
#include "blaschke/product.hpp"
