// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "ttedge/error.hpp"
#include "ttedge/synthetic.hpp"
#include "ttedge/tt.hpp"

using namespace ttedge;

namespace {

Tensor outer3(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
    std::vector<double> data;
    for (double x : a) {
        for (double y : b) {
            for (double z : c) data.push_back(x * y * z);
        }
    }
    return Tensor({a.size(), b.size(), c.size()}, std::move(data));
}

}  // namespace

TEST_CASE("one-dimensional tensors become a single core") {
    const Tensor w({5}, {1, 2, 3, 4, 5});
    const TTCores cores = tt_decompose(w, 0.1);
    REQUIRE(cores.size() == 1);
    CHECK(cores.ranks == std::vector<std::size_t>{1, 1});
    CHECK(cores.cores[0].dims() == Extents{1, 5, 1});
    CHECK(tt_decode(cores) == w);
}

TEST_CASE("rank-1 tensor decomposes to unit ranks") {
    const Tensor w = outer3({1, 2, 3}, {1, -1, 0.5, 2}, {3, 1, 4, 1, 5});
    const TTCores cores = tt_decompose(w, 1e-10);
    CHECK(cores.ranks == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(cores.parameter_count() == 12);
    CHECK(compression_ratio(w.dims(), cores) == 5.0);
    CHECK(reconstruction_error(w, cores) <= 1e-14);
}

TEST_CASE("tensor built from known ranks is recovered") {
    Rng rng(42);
    const TTCores source = random_cores({3, 4, 5}, {1, 2, 2, 1}, rng);
    const Tensor w = tt_decode(source);
    const TTCores cores = tt_decompose(w, 1e-8);
    for (std::size_t k = 0; k < cores.ranks.size(); ++k) CHECK(cores.ranks[k] <= source.ranks[k]);
    CHECK(reconstruction_error(w, cores) <= 1e-8);
}

TEST_CASE("decode") {
    SUBCASE("single core") {
        TTCores c{{Tensor({1, 3, 1}, {4, 5, 6})}, {1, 1}};
        const Tensor w = tt_decode(c);
        CHECK(w.dims() == Extents{3});
        CHECK(w == Tensor({3}, {4, 5, 6}));
    }
    SUBCASE("all-ones rank-2 chain sums to 2") {
        TTCores c{{Tensor({1, 2, 2}, {1, 1, 1, 1}), Tensor({2, 2, 1}, {1, 1, 1, 1})}, {1, 2, 1}};
        const Tensor w = tt_decode(c);
        CHECK(w.dims() == Extents{2, 2});
        for (double x : w.data()) CHECK(x == 2.0);
    }
    SUBCASE("broken chains are rejected") {
        TTCores c{{Tensor({2, 2, 1}, {1, 1, 1, 1})}, {2, 1}};
        CHECK_THROWS_AS(tt_decode(c), Error);
        TTCores gap{{Tensor({1, 2, 2}, {1, 1, 1, 1}), Tensor({3, 2, 1}, {1, 1, 1, 1, 1, 1})}, {1, 2, 1}};
        try {
            tt_decode(gap);
            FAIL("expected RankChainBroken");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::RankChainBroken);
        }
    }
}

TEST_CASE("decode matches brute-force index summation") {
    Rng rng(512);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t order = rng.index(1, 4);
        Extents dims;
        std::vector<std::size_t> ranks{1};
        for (std::size_t k = 0; k < order; ++k) {
            dims.push_back(rng.index(1, 5));
            ranks.push_back(k + 1 == order ? 1 : rng.index(1, 3));
        }
        if (element_count(dims) > 512) continue;
        const TTCores cores = random_cores(dims, ranks, rng);
        const Tensor w = tt_decode(cores);
        CHECK(w.dims() == dims);
        CHECK(oracle::rel_diff(w.data(), oracle::tt_decode(cores)) <= 1e-12);
    }
}

TEST_CASE("decompose then decode round trip at tight epsilon") {
    Rng rng(432);
    for (int trial = 0; trial < 20; ++trial) {
        const Tensor w = random_tensor({4, 3, 2}, rng);
        CHECK(reconstruction_error(w, tt_decompose(w, 1e-12)) <= 1e-10);
    }
}

TEST_CASE("epsilon zero keeps full ranks") {
    Rng rng(9);
    const Tensor w = random_tensor({3, 4, 2}, rng);
    const TTCores cores = tt_decompose(w, 0.0);
    CHECK(cores.ranks == std::vector<std::size_t>{1, 3, 2, 1});
    CHECK(compression_ratio(w.dims(), cores) <= 1.0);
    CHECK(reconstruction_error(w, cores) <= 1e-13);
}

TEST_CASE("compression ratio and reconstruction error bookkeeping") {
    TTCores twelve{{Tensor::zeros({1, 2, 2}), Tensor::zeros({2, 2, 1}), Tensor::zeros({1, 4, 1})}, {1, 2, 1, 1}};
    CHECK(twelve.parameter_count() == 12);
    CHECK(compression_ratio({2, 3, 4}, twelve) == 2.0);

    const Tensor unit({2, 2, 4}, std::vector<double>(16, 0.25));
    CHECK(reconstruction_error(unit, TTCores{{Tensor::zeros({1, 2, 1}), Tensor::zeros({1, 2, 1}),
                                              Tensor::zeros({1, 4, 1})},
                                             {1, 1, 1, 1}}) == 1.0);
    CHECK(reconstruction_error(Tensor::zeros({2}), TTCores{{Tensor::zeros({1, 2, 1})}, {1, 1}}) == 0.0);
    CHECK_THROWS_AS(reconstruction_error(Tensor::zeros({3}), TTCores{{Tensor::zeros({1, 2, 1})}, {1, 1}}), Error);
}

TEST_CASE("accuracy contract, rank bound and monotonicity on random tensors") {
    Rng rng(7070);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t order = rng.index(2, 5);
        Extents dims;
        for (std::size_t k = 0; k < order; ++k) dims.push_back(rng.index(2, 8));
        if (element_count(dims) > 4096) continue;
        const Tensor w = random_tensor(dims, rng);

        std::size_t prev_params = SIZE_MAX;
        for (double eps : {1e-4, 1e-2, 1e-1}) {
            const TTCores cores = tt_decompose(w, eps);
            CHECK(reconstruction_error(w, cores) <= 1.05 * eps);
            std::size_t numel = w.size();
            for (std::size_t k = 0; k + 1 < order; ++k) {
                const std::size_t rows = cores.ranks[k] * dims[k];
                CHECK(cores.ranks[k + 1] <= std::min(rows, numel / rows));
                numel = numel / rows * cores.ranks[k + 1];
            }
            CHECK(cores.parameter_count() <= prev_params);
            prev_params = cores.parameter_count();
        }
    }
}

TEST_CASE("f32 tensors decompose into f32 cores") {
    Rng rng(32);
    Tensor w = random_tensor({4, 4, 4}, rng);
    w = Tensor(w.dims(), std::vector<double>(w.data().begin(), w.data().end()), Dtype::F32);
    const TTCores cores = tt_decompose(w, 1e-3);
    for (const Tensor& c : cores.cores) CHECK(c.dtype() == Dtype::F32);
    CHECK(reconstruction_error(w, cores) <= 1.05e-3 + 1e-6);
}

TEST_CASE("decompose rejects negative epsilon") {
    CHECK_THROWS_AS(tt_decompose(Tensor::zeros({2, 2}), -1.0), Error);
}
