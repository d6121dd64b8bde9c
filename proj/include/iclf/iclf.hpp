#pragma once

#include "iclf/config.hpp"
#include "iclf/curve.hpp"
#include "iclf/diagnostics.hpp"
#include "iclf/error.hpp"
#include "iclf/fft.hpp"
#include "iclf/flow.hpp"
#include "iclf/frenet.hpp"
#include "iclf/invariants.hpp"
#include "iclf/mobius.hpp"
#include "iclf/polyfit.hpp"
#include "iclf/svg.hpp"
