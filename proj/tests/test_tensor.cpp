// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "ttedge/error.hpp"
#include "ttedge/synthetic.hpp"
#include "ttedge/tensor.hpp"

using namespace ttedge;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an ttedge::Error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("reshape reinterprets dims without touching data") {
    const Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
    const Tensor r = reshape(t, {3, 2});
    CHECK(r.dims() == Extents{3, 2});
    CHECK(std::equal(r.data().begin(), r.data().end(), t.data().begin()));

    const Tensor v({4}, {1, 2, 3, 4});
    CHECK(reshape(v, {2, 2}).data()[3] == 4.0);

    // numel / (r_{k-1}·n_k) with numel = 24, r_{k-1}·n_k = 4.
    const Tensor w = Tensor::zeros({2, 3, 4});
    CHECK(reshape(w, {4, 24 / 4}).dims() == Extents{4, 6});
}

TEST_CASE("reshape rejects a different element count") {
    const Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
    CHECK(code_of([&] { reshape(t, {4, 2}); }) == ErrorCode::ElementCountMismatch);
    CHECK(code_of([&] { Tensor({2, 2}, {1, 2, 3}); }) == ErrorCode::ElementCountMismatch);
    CHECK(code_of([&] { Tensor({2, 0}, {}); }) == ErrorCode::BadDims);
}

TEST_CASE("reshape round trip is the identity") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Extents dims{rng.index(1, 4), rng.index(1, 4), rng.index(1, 4)};
        const Tensor t = random_tensor(dims, rng);
        const Tensor flat = reshape(t, {t.size()});
        const Tensor back = reshape(reshape(flat, {1, t.size()}), dims);
        CHECK(back == t);
    }
}

TEST_CASE("frobenius norm") {
    CHECK(frobenius_norm(Tensor::zeros({3, 3})) == 0.0);
    CHECK(frobenius_norm(Tensor({2}, {3, 4})) == 5.0);
    CHECK(frobenius_norm(Tensor({4}, {1, 1, 1, 1})) == 2.0);

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Tensor t = random_tensor({rng.index(1, 8), rng.index(1, 8)}, rng);
        double sum = 0.0;
        for (double x : t.data()) sum += x * x;
        const double n = frobenius_norm(t);
        CHECK(std::abs(n * n - sum) <= 1e-14 * sum);
    }
}

TEST_CASE("matmul_ref") {
    Rng rng(5);
    const Matrix m = random_matrix(3, 4, rng);
    CHECK(matmul_ref(Matrix::identity(3), m) == m);
    CHECK(matmul_ref(Matrix{{1, 2}, {3, 4}}, Matrix{{5}, {6}}) == Matrix{{17}, {39}});
    const Matrix z = matmul_ref(Matrix(2, 3), m);
    for (double x : z.data()) CHECK(x == 0.0);
    CHECK(code_of([&] { matmul_ref(m, m); }) == ErrorCode::DimMismatch);
}

TEST_CASE("tensor_contract shapes") {
    Rng rng(7);
    const Tensor x = random_tensor({2, 3}, rng);
    const Tensor y = random_tensor({3, 4}, rng);
    const Tensor t = tensor_contract(x, y);
    CHECK(t.dims() == Extents{2, 4});
    const Matrix prod = matmul_ref(Matrix::from_tensor(x), Matrix::from_tensor(y));
    CHECK(std::equal(t.data().begin(), t.data().end(), prod.data().begin()));

    CHECK(tensor_contract(random_tensor({1, 2, 3}, rng), random_tensor({3, 2, 1}, rng)).dims() ==
          Extents{1, 2, 2, 1});

    const Tensor a({1, 3, 1}, {1, 2, 3});
    const Tensor b({1, 2, 1}, {10, 20});
    const Tensor outer = tensor_contract(a, b);
    CHECK(outer.dims() == Extents{1, 3, 2, 1});
    CHECK(outer.at({0, 2, 1, 0}) == 60.0);

    CHECK(code_of([&] { tensor_contract(x, x); }) == ErrorCode::ContractDimMismatch);
}

TEST_CASE("tensor_contract matches index summation on small tensors") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t nx = rng.index(1, 3), ny = rng.index(1, 3);
        const std::size_t inner = rng.index(1, 4);
        Extents xd, yd{inner};
        for (std::size_t i = 0; i < nx; ++i) xd.push_back(rng.index(1, 3));
        xd.push_back(inner);
        for (std::size_t i = 0; i < ny; ++i) yd.push_back(rng.index(1, 3));
        if (element_count(xd) > 256 || element_count(yd) > 256) continue;
        const Tensor x = random_tensor(xd, rng);
        const Tensor y = random_tensor(yd, rng);
        const Tensor t = tensor_contract(x, y);
        CHECK(oracle::rel_diff(t.data(), oracle::contract(x, y)) <= 1e-13);
    }
}

TEST_CASE("f32 tensors keep float precision") {
    const Tensor t({2}, {0.1, 1.0 / 3.0}, Dtype::F32);
    CHECK(t[0] == static_cast<double>(0.1f));
    CHECK(reshape(t, {1, 2}).dtype() == Dtype::F32);
}
