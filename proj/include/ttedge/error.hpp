// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ttedge {

enum class ErrorCode {
    ElementCountMismatch,
    DimMismatch,
    ContractDimMismatch,
    DegenerateBeta,
    ShapeError,
    NoConvergence,
    BadDims,
    EmptyTensor,
    RankChainBroken,
    ShapeMismatch,
    SpmOverflow,
    PhaseSetMismatch,
    BadConfig,
    MalformedFile,
    Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Thrown by the bidiagonal QR iteration when the sweep budget runs out.
class NoConvergence : public Error {
public:
    NoConvergence(std::size_t sweeps, const std::string& what)
        : Error(ErrorCode::NoConvergence, what), sweeps_(sweeps) {}

    std::size_t sweeps() const noexcept { return sweeps_; }

private:
    std::size_t sweeps_;
};

}  // namespace ttedge
