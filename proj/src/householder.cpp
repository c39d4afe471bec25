// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/householder.hpp"

#include <string>

#include "ttedge/error.hpp"

namespace ttedge {

HouseholderStep house(std::span<const double> x) {
    HouseholderStep step{0.0, std::vector<double>(x.begin(), x.end())};
    if (x.empty()) return step;
    const double norm = frobenius_norm(x);
    if (norm == 0.0) return step;
    const double sign = x[0] >= 0.0 ? 1.0 : -1.0;
    step.q = -sign * norm;
    step.v[0] += sign * norm;
    return step;
}

Matrix house_mm_update(double q, std::span<const double> v, const Matrix& sub, ReflectSide side,
                       GemmExecutor& gemm) {
    const std::size_t expected = side == ReflectSide::Left ? sub.rows() : sub.cols();
    if (v.size() != expected) {
        throw Error(ErrorCode::DimMismatch, "reflector of length " + std::to_string(v.size()) + " against " +
                                                std::to_string(sub.rows()) + "x" + std::to_string(sub.cols()));
    }
    const double beta = v.empty() ? 0.0 : v[0] * q;
    if (q == 0.0 || beta == 0.0) throw Error(ErrorCode::DegenerateBeta, "q == 0, nothing to reflect");
    if (sub.empty()) return sub;

    std::vector<double> scaled(v.begin(), v.end());
    for (double& s : scaled) s /= beta;
    gemm.on_vector_division(v.size());

    if (side == ReflectSide::Left) {
        const Matrix vt_sub = gemm.multiply(Matrix::row(v), sub, Operand::Householder, Operand::Streamed);
        return gemm.multiply_add(Matrix::column(scaled), vt_sub, sub, Operand::Householder, Operand::Streamed);
    }
    const Matrix sub_v = gemm.multiply(sub, Matrix::column(v), Operand::Streamed, Operand::Householder);
    return gemm.multiply_add(sub_v, Matrix::row(scaled), sub, Operand::Streamed, Operand::Householder);
}

std::vector<double> BidiagFactorization::diagonal() const {
    std::vector<double> d(b.rows());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = b(i, i);
    return d;
}

std::vector<double> BidiagFactorization::superdiagonal() const {
    std::vector<double> e(b.rows() ? b.rows() - 1 : 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = b(i, i + 1);
    return e;
}

BidiagFactorization bidiagonalize(const Matrix& a, GemmExecutor& gemm) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (n == 0) throw Error(ErrorCode::ShapeError, "bidiagonalize needs at least one column");
    if (m < n) throw Error(ErrorCode::ShapeError, "bidiagonalize needs rows >= cols; transpose first");

    PhaseScope scope(gemm.trace(), Phase::HBD);
    Matrix w = a;
    BidiagFactorization f{Matrix::identity(m, n), Matrix(n, n), Matrix::identity(n)};

    // Householder reduction.
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = w.column_values(i, i);
        gemm.on_house(x.size());
        const HouseholderStep left = house(x);
        f.b(i, i) = left.q;
        if (left.q != 0.0 && i + 1 < n) {
            const Matrix sub = w.block(i, i + 1, m - i, n - i - 1);
            w.set_block(i, i + 1, house_mm_update(left.q, left.v, sub, ReflectSide::Left, gemm));
        }
        w(i, i) = left.v[0];

        if (i + 1 < n) {
            const auto y = w.row_values(i, i + 1);
            gemm.on_house(y.size());
            const HouseholderStep right = house(y);
            f.b(i, i + 1) = right.q;
            if (right.q != 0.0) {
                const Matrix sub = w.block(i + 1, i + 1, m - i - 1, n - i - 1);
                w.set_block(i + 1, i + 1, house_mm_update(right.q, right.v, sub, ReflectSide::Right, gemm));
            }
            w(i, i + 1) = right.v[0];
        }
    }

    // Householder accumulation, last reflector first.
    for (std::size_t i = n; i-- > 0;) {
        const auto v_left = w.column_values(i, i);
        gemm.on_householder_reload(v_left.size());
        if (f.b(i, i) != 0.0) {
            const Matrix sub = f.u_b.block(i, i, m - i, n - i);
            f.u_b.set_block(i, i, house_mm_update(f.b(i, i), v_left, sub, ReflectSide::Left, gemm));
        }
        if (i + 1 < n) {
            const auto v_right = w.row_values(i, i + 1);
            gemm.on_householder_reload(v_right.size());
            if (f.b(i, i + 1) != 0.0) {
                const Matrix sub = f.v_b_t.block(i + 1, i + 1, n - i - 1, n - i - 1);
                f.v_b_t.set_block(i + 1, i + 1,
                                  house_mm_update(f.b(i, i + 1), v_right, sub, ReflectSide::Right, gemm));
            }
        }
    }
    gemm.on_hbd_finished();
    return f;
}

}  // namespace ttedge
