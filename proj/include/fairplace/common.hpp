// Copyright 2026 The Fairplace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fairplace {

// Thrown when brute-force enumeration would exceed the configured facility cap.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an algorithm's metric/cost assumptions do not hold for the
// given instance (e.g. tree refinement on non-uniform costs).
class UnsupportedConfiguration : public std::runtime_error {
public:
  explicit UnsupportedConfiguration(const std::string& what)
      : std::runtime_error(what) {}
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minkowski norm parameter, stored as 1/p so that p = infinity is the
// ordinary value 0 and searches over norms are closed-interval searches
// over [0, 1].
class NormParam {
public:
  NormParam() : inv_p_(1.0) {}
  explicit NormParam(double inv_p) : inv_p_(inv_p) {
    if (!(inv_p >= 0.0 && inv_p <= 1.0))
      throw std::invalid_argument("NormParam: 1/p must lie in [0, 1]");
  }

  static NormParam from_p(double p) {
    if (std::isinf(p)) return infinity();
    if (!(p >= 1.0)) throw std::invalid_argument("NormParam: p must be >= 1");
    return NormParam(1.0 / p);
  }
  static NormParam one() { return NormParam(1.0); }
  static NormParam infinity() { return NormParam(0.0); }

  double inv_p() const { return inv_p_; }
  double p() const { return inv_p_ == 0.0 ? kInf : 1.0 / inv_p_; }
  bool is_infinity() const { return inv_p_ == 0.0; }

  // Ordering by p: smaller p first.
  friend bool operator<(NormParam a, NormParam b) { return a.inv_p_ > b.inv_p_; }
  friend bool operator==(NormParam a, NormParam b) { return a.inv_p_ == b.inv_p_; }
  friend bool operator<=(NormParam a, NormParam b) { return !(b < a); }

  std::string to_string() const {
    if (is_infinity()) return "inf";
    double pv = p();
    if (pv == std::floor(pv) && pv < 1e15) {
      return std::to_string(static_cast<long long>(pv));
    }
    return std::to_string(pv);
  }

private:
  double inv_p_;
};

enum class Model { kStandard, kNormalized };

inline std::string model_name(Model m) {
  return m == Model::kStandard ? "standard" : "normalized";
}

// splitmix64: the seeding discipline fixed for all generators, so that
// instances are reproducible bit-for-bit across platforms and languages.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 significant bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) via 128-bit multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
  std::uint64_t state_;
};

inline bool approx_le(double a, double b, double rel_tol) {
  double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return a <= b + rel_tol * scale;
}

inline bool approx_eq(double a, double b, double rel_tol) {
  double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= rel_tol * scale;
}

}  // namespace fairplace
