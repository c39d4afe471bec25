// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ttedge/tensor.hpp"
#include "ttedge/tt.hpp"

namespace ttedge {

// Binary layouts, all integers and floats little-endian, no padding.
//
// Tensor ("TTED-T"):
//   "TTED" | u32 version=1 | u8 dtype (0 f64, 1 f32) | u32 ndim | u64 dims[ndim] | data
//
// Core archive ("TTED-A"):
//   "TTEA" | u32 version=1 | u8 dtype | u32 N | u64 ranks[N+1] | u64 dims[N] |
//   N core payloads, each row-major [r_{k-1}, n_k, r_k]
//
// Decoders throw Error(MalformedFile) on any structural problem. The archive
// decoder does not check the r_0 = r_N = 1 boundary; that is left to
// TTCores::validate so callers can tell a broken chain from a corrupt file.
inline constexpr std::uint32_t kFormatVersion = 1;

std::vector<std::uint8_t> encode_tensor(const Tensor& t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_archive(const TTCores& cores);
TTCores decode_archive(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Tensor load_tensor(const std::filesystem::path& path);
void save_tensor(const std::filesystem::path& path, const Tensor& t);
TTCores load_archive(const std::filesystem::path& path);
void save_archive(const std::filesystem::path& path, const TTCores& cores);

}  // namespace ttedge
