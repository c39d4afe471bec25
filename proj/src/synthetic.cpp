// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/synthetic.hpp"

#include <charconv>
#include <string>

#include "ttedge/error.hpp"

namespace ttedge {

namespace {

std::vector<std::size_t> parse_list(std::string_view text) {
    std::vector<std::size_t> out;
    while (true) {
        const auto sep = text.find('x');
        const std::string_view item = text.substr(0, sep);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc{} || ptr != item.data() + item.size() || value == 0) {
            throw Error(ErrorCode::BadDims, "bad extent '" + std::string(item) + "'");
        }
        out.push_back(value);
        if (sep == std::string_view::npos) break;
        text.remove_prefix(sep + 1);
    }
    return out;
}

}  // namespace

SyntheticSpec parse_synthetic(std::string_view text) {
    SyntheticSpec spec;
    const auto comma = text.find(',');
    spec.dims = parse_list(text.substr(0, comma));
    if (comma != std::string_view::npos) {
        spec.ranks = parse_list(text.substr(comma + 1));
        if (spec.ranks->size() != spec.dims.size() + 1) {
            throw Error(ErrorCode::BadDims, "rank chain needs one more entry than dims");
        }
    }
    return spec;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    return Matrix(rows, cols, rng.vector(rows * cols));
}

Tensor random_tensor(const Extents& dims, Rng& rng) { return Tensor(dims, rng.vector(element_count(dims))); }

TTCores random_cores(const Extents& dims, const std::vector<std::size_t>& ranks, Rng& rng) {
    if (ranks.size() != dims.size() + 1) throw Error(ErrorCode::BadDims, "rank chain length");
    TTCores cores;
    cores.ranks = ranks;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        cores.cores.push_back(random_tensor({ranks[k], dims[k], ranks[k + 1]}, rng));
    }
    cores.validate();
    return cores;
}

Tensor synthetic_tensor(const SyntheticSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    if (!spec.ranks) return random_tensor(spec.dims, rng);
    return tt_decode(random_cores(spec.dims, *spec.ranks, rng));
}

}  // namespace ttedge
