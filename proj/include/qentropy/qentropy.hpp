#pragma once

#include "qentropy/bounds.hpp"
#include "qentropy/dist.hpp"
#include "qentropy/divergence.hpp"
#include "qentropy/entropy.hpp"
#include "qentropy/errors.hpp"
#include "qentropy/joint.hpp"
#include "qentropy/qmath.hpp"
#include "qentropy/quasilinear.hpp"
#include "qentropy/report.hpp"
