// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "ttedge/tensor.hpp"
#include "ttedge/tt.hpp"

namespace ttedge {

// Seeded generator with a platform-independent double stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [lo, hi).
    double uniform(double lo = -1.0, double hi = 1.0) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }
    std::size_t index(std::size_t lo, std::size_t hi_inclusive) {
        return lo + static_cast<std::size_t>(engine_() % (hi_inclusive - lo + 1));
    }
    std::vector<double> vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
        std::vector<double> v(n);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 engine_;
};

// "3x4x5" for i.i.d. uniform entries, "3x4x5,1x2x2x1" for the decode of
// random cores with the given rank chain.
struct SyntheticSpec {
    Extents dims;
    std::optional<std::vector<std::size_t>> ranks;
};

SyntheticSpec parse_synthetic(std::string_view text);

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);
Tensor random_tensor(const Extents& dims, Rng& rng);
TTCores random_cores(const Extents& dims, const std::vector<std::size_t>& ranks, Rng& rng);
Tensor synthetic_tensor(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace ttedge
