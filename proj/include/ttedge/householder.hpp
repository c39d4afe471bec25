// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "ttedge/gemm.hpp"
#include "ttedge/tensor.hpp"

namespace ttedge {

// Output of HOUSE. `q` is the entry that survives in B, `v` the reflector
// vector with its first element already shifted.
struct HouseholderStep {
    double q = 0.0;
    std::vector<double> v;
};

// q = -sign(x₁)‖x‖ and v = x with v₁ += sign(x₁)‖x‖, where sign(0) = +1.
// A zero vector yields q = 0 and v = x.
HouseholderStep house(std::span<const double> x);

enum class ReflectSide : int { Left = 0, Right = 1 };

// Applies the reflector I - 2vvᵀ/(vᵀv) to `sub` using β = v₁·q:
//   Left:  sub + (v/β)(vᵀ·sub)      = H·sub
//   Right: sub + (sub·v)(vᵀ/β)      = sub·H
// Both products go through `gemm`. Throws DegenerateBeta when q == 0.
Matrix house_mm_update(double q, std::span<const double> v, const Matrix& sub, ReflectSide side,
                       GemmExecutor& gemm);

// A = u_b · b · v_b_t with b upper bidiagonal.
struct BidiagFactorization {
    Matrix u_b;    // M×N, orthonormal columns
    Matrix b;      // N×N upper bidiagonal
    Matrix v_b_t;  // N×N orthogonal

    std::vector<double> diagonal() const;
    std::vector<double> superdiagonal() const;
};

// Two-phase Householder bidiagonalization of an M×N matrix with M ≥ N.
//
// Reduction sweeps i = 0..N-1 applying the left reflector to A[i:M, i+1:N]
// and, for i < N-1, the right reflector to A[i+1:M, i+1:N]. The first
// element of each reflector vector is written back into the eliminated
// position of A, so the full vectors stay available in A for the
// accumulation phase, which rebuilds U_B and V_Bᵀ from them in reverse
// order. Runs in the HBD phase of the executor's trace.
BidiagFactorization bidiagonalize(const Matrix& a, GemmExecutor& gemm);

}  // namespace ttedge
