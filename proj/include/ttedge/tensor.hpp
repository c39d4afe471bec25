// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace ttedge {

using Extents = std::vector<std::size_t>;

// Storage precision carried alongside a tensor. Arithmetic is always done in
// double; F32 values are kept rounded to float precision.
enum class Dtype : std::uint8_t { F64 = 0, F32 = 1 };

std::size_t element_count(std::span<const std::size_t> dims);

// Dense row-major N-dimensional array (last index fastest).
class Tensor {
public:
    Tensor() = default;
    Tensor(Extents dims, std::vector<double> data, Dtype dtype = Dtype::F64);

    static Tensor zeros(Extents dims, Dtype dtype = Dtype::F64);

    const Extents& dims() const noexcept { return dims_; }
    std::size_t ndim() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return data_.size(); }
    Dtype dtype() const noexcept { return dtype_; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    double operator[](std::size_t flat) const { return data_[flat]; }
    double& operator[](std::size_t flat) { return data_[flat]; }

    double at(std::initializer_list<std::size_t> index) const;

    friend bool operator==(const Tensor&, const Tensor&) = default;

private:
    Extents dims_;
    std::vector<double> data_;
    Dtype dtype_ = Dtype::F64;
};

// Row-major matrix. Plays the role of a 2-D tensor in the factorization code.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    // First `cols` columns of the rows×rows identity.
    static Matrix identity(std::size_t rows, std::size_t cols);
    static Matrix column(std::span<const double> v);
    static Matrix row(std::span<const double> v);
    static Matrix from_tensor(const Tensor& t);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& src);
    std::vector<double> column_values(std::size_t c, std::size_t r0 = 0) const;
    std::vector<double> row_values(std::size_t r, std::size_t c0 = 0) const;

    Matrix transposed() const;
    Tensor to_tensor(Dtype dtype = Dtype::F64) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Tensor reshape(const Tensor& t, Extents new_dims);

double frobenius_norm(std::span<const double> values);
double frobenius_norm(const Tensor& t);
double frobenius_norm(const Matrix& m);

// Plain triple loop, inner dimension innermost.
Matrix matmul_ref(const Matrix& a, const Matrix& b);

// X ×₁ Y: contracts the last extent of x with the first extent of y.
Tensor tensor_contract(const Tensor& x, const Tensor& y);

Matrix operator-(const Matrix& a, const Matrix& b);
Tensor operator-(const Tensor& a, const Tensor& b);

// Rounds every element to the nearest float when dtype is F32.
void round_to_dtype(std::span<double> values, Dtype dtype);

}  // namespace ttedge
