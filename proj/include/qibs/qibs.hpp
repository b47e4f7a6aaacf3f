// Umbrella header.
#pragma once

#include "qibs/adversary.hpp"
#include "qibs/costs.hpp"
#include "qibs/density.hpp"
#include "qibs/experiment.hpp"
#include "qibs/keyestab.hpp"
#include "qibs/noise.hpp"
#include "qibs/protocol.hpp"
#include "qibs/qotp.hpp"
#include "qibs/report_json.hpp"
#include "qibs/rng.hpp"
#include "qibs/statevector.hpp"
#include "qibs/toy.hpp"
