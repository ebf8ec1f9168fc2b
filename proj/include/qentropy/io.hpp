#pragma once

// Distribution file formats.
//
//   JSON distribution:  {"weights": [w1, w2, ...]}    ("values" is accepted for point sets)
//   CSV distribution:   one number per line, optional first line "weight"
//   JSON joint:         {"dims": [d1, ..., dk], "cells": [...]}  row-major, last axis fastest
//
// Parsing lives here; validation (positivity, normalization) is left to the
// distribution types.

#include <string>
#include <vector>

#include "qentropy/dist.hpp"
#include "qentropy/errors.hpp"
#include "qentropy/joint.hpp"

namespace qentropy {

/// Unreadable or malformed input; the message carries file and line.
class InputError : public Error {
 public:
  using Error::Error;
};

std::vector<double> parse_weights(const std::string& text, const std::string& source);
std::vector<double> read_weights(const std::string& path);

ProbDist<double> read_dist(const std::string& path);
JointDist<double> read_joint(const std::string& path);
JointDist<double> parse_joint(const std::string& text, const std::string& source);

/// Canonical JSON form of a distribution; re-parses to an identical ProbDist.
std::string echo_dist(const ProbDist<double>& p);

}  // namespace qentropy
