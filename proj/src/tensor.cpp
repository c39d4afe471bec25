// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "ttedge/error.hpp"

namespace ttedge {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ElementCountMismatch: return "ElementCountMismatch";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::ContractDimMismatch: return "ContractDimMismatch";
        case ErrorCode::DegenerateBeta: return "DegenerateBeta";
        case ErrorCode::ShapeError: return "ShapeError";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::BadDims: return "BadDims";
        case ErrorCode::EmptyTensor: return "EmptyTensor";
        case ErrorCode::RankChainBroken: return "RankChainBroken";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::SpmOverflow: return "SpmOverflow";
        case ErrorCode::PhaseSetMismatch: return "PhaseSetMismatch";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::MalformedFile: return "MalformedFile";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string dims_string(std::span<const std::size_t> dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

}  // namespace

std::size_t element_count(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void round_to_dtype(std::span<double> values, Dtype dtype) {
    if (dtype != Dtype::F32) return;
    for (double& v : values) v = static_cast<double>(static_cast<float>(v));
}

Tensor::Tensor(Extents dims, std::vector<double> data, Dtype dtype)
    : dims_(std::move(dims)), data_(std::move(data)), dtype_(dtype) {
    if (dims_.empty()) throw Error(ErrorCode::BadDims, "tensor needs at least one extent");
    for (std::size_t d : dims_) {
        if (d == 0) throw Error(ErrorCode::BadDims, "zero extent in " + dims_string(dims_));
    }
    if (element_count(dims_) != data_.size()) {
        throw Error(ErrorCode::ElementCountMismatch,
                    dims_string(dims_) + " needs " + std::to_string(element_count(dims_)) +
                        " elements, got " + std::to_string(data_.size()));
    }
    round_to_dtype(data_, dtype_);
}

Tensor Tensor::zeros(Extents dims, Dtype dtype) {
    const std::size_t n = element_count(dims);
    return Tensor(std::move(dims), std::vector<double>(n, 0.0), dtype);
}

double Tensor::at(std::initializer_list<std::size_t> index) const {
    if (index.size() != dims_.size()) throw Error(ErrorCode::DimMismatch, "index rank");
    std::size_t flat = 0;
    std::size_t k = 0;
    for (std::size_t i : index) flat = flat * dims_[k++] + i;
    return data_.at(flat);
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::ElementCountMismatch,
                    std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix from " +
                        std::to_string(data_.size()) + " elements");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::DimMismatch, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) { return identity(n, n); }

Matrix Matrix::identity(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(std::span<const double> v) {
    return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::row(std::span<const double> v) {
    return Matrix(1, v.size(), std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::from_tensor(const Tensor& t) {
    auto values = std::vector<double>(t.data().begin(), t.data().end());
    if (t.ndim() == 1) return Matrix(1, t.dims()[0], std::move(values));
    if (t.ndim() != 2) throw Error(ErrorCode::ShapeError, "matrix view needs a 1-D or 2-D tensor");
    return Matrix(t.dims()[0], t.dims()[1], std::move(values));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimMismatch, "block out of range");
    Matrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    }
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
    if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) {
        throw Error(ErrorCode::DimMismatch, "block out of range");
    }
    for (std::size_t r = 0; r < src.rows(); ++r) {
        for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
    }
}

std::vector<double> Matrix::column_values(std::size_t c, std::size_t r0) const {
    std::vector<double> out;
    out.reserve(rows_ - std::min(r0, rows_));
    for (std::size_t r = r0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
}

std::vector<double> Matrix::row_values(std::size_t r, std::size_t c0) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(r * cols_ + std::min(c0, cols_));
    auto last = data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_);
    return {first, last};
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
}

Tensor Matrix::to_tensor(Dtype dtype) const { return Tensor({rows_, cols_}, data_, dtype); }

Tensor reshape(const Tensor& t, Extents new_dims) {
    if (element_count(new_dims) != t.size()) {
        throw Error(ErrorCode::ElementCountMismatch,
                    "cannot reshape " + dims_string(t.dims()) + " to " + dims_string(new_dims));
    }
    return Tensor(std::move(new_dims), std::vector<double>(t.data().begin(), t.data().end()), t.dtype());
}

double frobenius_norm(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(sum);
}

double frobenius_norm(const Tensor& t) { return frobenius_norm(t.data()); }
double frobenius_norm(const Matrix& m) { return frobenius_norm(m.data()); }

Matrix matmul_ref(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimMismatch, "matmul " + std::to_string(a.rows()) + "x" +
                                                std::to_string(a.cols()) + " by " +
                                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

Tensor tensor_contract(const Tensor& x, const Tensor& y) {
    const std::size_t inner = x.dims().back();
    if (inner != y.dims().front()) {
        throw Error(ErrorCode::ContractDimMismatch,
                    "last extent of " + dims_string(x.dims()) + " vs first extent of " + dims_string(y.dims()));
    }
    const std::size_t outer_x = x.size() / inner;
    const std::size_t outer_y = y.size() / inner;
    Matrix xm(outer_x, inner, std::vector<double>(x.data().begin(), x.data().end()));
    Matrix ym(inner, outer_y, std::vector<double>(y.data().begin(), y.data().end()));
    Matrix prod = matmul_ref(xm, ym);

    Extents out_dims(x.dims().begin(), x.dims().end() - 1);
    out_dims.insert(out_dims.end(), y.dims().begin() + 1, y.dims().end());
    if (out_dims.empty()) out_dims.push_back(1);
    const Dtype dtype = (x.dtype() == Dtype::F32 && y.dtype() == Dtype::F32) ? Dtype::F32 : Dtype::F64;
    return Tensor(std::move(out_dims), std::vector<double>(prod.data().begin(), prod.data().end()), dtype);
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimMismatch, "matrix difference");
    Matrix out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.data()[i];
    return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
    if (a.dims() != b.dims()) throw Error(ErrorCode::ShapeMismatch, "tensor difference");
    std::vector<double> out(a.data().begin(), a.data().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return Tensor(a.dims(), std::move(out));
}

}  // namespace ttedge
