#pragma once

#include "hypercurv/error.hpp"
#include "hypercurv/scalar.hpp"
#include "hypercurv/hypercore.hpp"
#include "hypercurv/metric.hpp"
#include "hypercurv/walk.hpp"
#include "hypercurv/transport.hpp"
#include "hypercurv/curvature.hpp"
#include "hypercurv/bounds.hpp"
