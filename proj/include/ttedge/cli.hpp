// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ttedge/error.hpp"

namespace ttedge::cli {

// Exit statuses. Each error class maps to exactly one of these.
inline constexpr int kOk = 0;
inline constexpr int kContractViolated = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kPipelineFailure = 3;
inline constexpr int kSpmOverflow = 4;

int exit_code_for(ErrorCode code);

// Runs `ttedge <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ttedge::cli
