#pragma once

#include <optional>
#include <vector>

#include "blowup/puiseux.hpp"

namespace blowup {

// Valuation of a root bundle of a y-polynomial: nullopt encodes +infinity
// (roots at the expansion center itself).
struct RootVal {
    std::optional<Frac> val;
    long mult = 0;
};

// Root valuations of sum_i coeffs[i] z^i from the lower Newton polygon.
std::vector<RootVal> newton_root_valuations(const std::vector<PuiseuxGerm>& coeffs);

// min_i (val(coeffs[i]) + t*i); nullopt for the zero polynomial.
std::optional<Frac> tropical_valuation(const std::vector<PuiseuxGerm>& coeffs, const Frac& t);

// The reduction support at the tropical level v: pairs (i, leading rational)
// with coeffs[i] contributing at exponent v - t*i.
std::vector<std::pair<long, Frac>> reduction_support(const std::vector<PuiseuxGerm>& coeffs,
                                                     const Frac& t, const Frac& v);

}  // namespace blowup
