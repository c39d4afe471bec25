// SPDX-FileCopyrightText: © 2026 TT-Edge contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "ttedge/format.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "ttedge/error.hpp"

namespace ttedge {

namespace {

constexpr char kTensorMagic[4] = {'T', 'T', 'E', 'D'};
constexpr char kArchiveMagic[4] = {'T', 'T', 'E', 'A'};
constexpr std::uint32_t kMaxOrder = 1024;

class ByteWriter {
public:
    void magic(const char (&m)[4]) { bytes_.insert(bytes_.end(), m, m + 4); }
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void values(std::span<const double> data, Dtype dtype) {
        for (double v : data) {
            if (dtype == Dtype::F32) {
                u32(std::bit_cast<std::uint32_t>(static_cast<float>(v)));
            } else {
                u64(std::bit_cast<std::uint64_t>(v));
            }
        }
    }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void expect_magic(const char (&m)[4], const char* what) {
        need(4, what);
        if (std::memcmp(bytes_.data() + pos_, m, 4) != 0) fail(std::string("bad magic for ") + what);
        pos_ += 4;
    }
    std::uint8_t u8(const char* what) {
        need(1, what);
        return bytes_[pos_++];
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }
    std::vector<double> values(std::size_t count, Dtype dtype) {
        const std::size_t width = dtype == Dtype::F32 ? 4 : 8;
        if (count > remaining() / width) fail("payload truncated");
        std::vector<double> out(count);
        for (double& v : out) {
            v = dtype == Dtype::F32 ? static_cast<double>(std::bit_cast<float>(u32("element")))
                                    : std::bit_cast<double>(u64("element"));
        }
        return out;
    }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    [[noreturn]] static void fail(const std::string& msg) { throw Error(ErrorCode::MalformedFile, msg); }

private:
    void need(std::size_t n, const char* what) {
        if (remaining() < n) fail(std::string("truncated while reading ") + what);
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

Dtype read_dtype(ByteReader& in) {
    const std::uint8_t code = in.u8("dtype");
    if (code > 1) ByteReader::fail("unknown dtype code " + std::to_string(code));
    return static_cast<Dtype>(code);
}

void read_version(ByteReader& in) {
    const std::uint32_t version = in.u32("version");
    if (version != kFormatVersion) ByteReader::fail("unsupported version " + std::to_string(version));
}

std::size_t checked_product(std::initializer_list<std::uint64_t> factors) {
    std::uint64_t p = 1;
    for (std::uint64_t f : factors) {
        if (f == 0) ByteReader::fail("zero extent");
        if (p > std::numeric_limits<std::uint64_t>::max() / f) ByteReader::fail("extent product overflows");
        p *= f;
    }
    if (p > std::numeric_limits<std::size_t>::max()) ByteReader::fail("extent product overflows");
    return static_cast<std::size_t>(p);
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
    ByteWriter out;
    out.magic(kTensorMagic);
    out.u32(kFormatVersion);
    out.u8(static_cast<std::uint8_t>(t.dtype()));
    out.u32(static_cast<std::uint32_t>(t.ndim()));
    for (std::size_t d : t.dims()) out.u64(d);
    out.values(t.data(), t.dtype());
    return out.take();
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    in.expect_magic(kTensorMagic, "tensor file");
    read_version(in);
    const Dtype dtype = read_dtype(in);
    const std::uint32_t ndim = in.u32("ndim");
    if (ndim == 0 || ndim > kMaxOrder) ByteReader::fail("bad ndim " + std::to_string(ndim));
    Extents dims(ndim);
    std::size_t count = 1;
    for (auto& d : dims) {
        const std::uint64_t extent = in.u64("dims");
        count = checked_product({count, extent});
        d = static_cast<std::size_t>(extent);
    }
    auto data = in.values(count, dtype);
    if (in.remaining() != 0) ByteReader::fail("trailing bytes after tensor payload");
    return Tensor(std::move(dims), std::move(data), dtype);
}

std::vector<std::uint8_t> encode_archive(const TTCores& cores) {
    const Dtype dtype = cores.cores.empty() ? Dtype::F64 : cores.cores.front().dtype();
    ByteWriter out;
    out.magic(kArchiveMagic);
    out.u32(kFormatVersion);
    out.u8(static_cast<std::uint8_t>(dtype));
    out.u32(static_cast<std::uint32_t>(cores.size()));
    for (std::size_t r : cores.ranks) out.u64(r);
    for (std::size_t n : cores.mode_dims()) out.u64(n);
    for (const Tensor& c : cores.cores) out.values(c.data(), dtype);
    return out.take();
}

TTCores decode_archive(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes);
    in.expect_magic(kArchiveMagic, "core archive");
    read_version(in);
    const Dtype dtype = read_dtype(in);
    const std::uint32_t order = in.u32("core count");
    if (order == 0 || order > kMaxOrder) ByteReader::fail("bad core count " + std::to_string(order));

    TTCores out;
    out.ranks.resize(order + 1);
    for (auto& r : out.ranks) {
        r = static_cast<std::size_t>(in.u64("ranks"));
        if (r == 0) ByteReader::fail("zero rank");
    }
    Extents dims(order);
    for (auto& d : dims) {
        d = static_cast<std::size_t>(in.u64("dims"));
        if (d == 0) ByteReader::fail("zero mode extent");
    }
    for (std::size_t k = 0; k < order; ++k) {
        const std::size_t count = checked_product({out.ranks[k], dims[k], out.ranks[k + 1]});
        out.cores.emplace_back(Extents{out.ranks[k], dims[k], out.ranks[k + 1]}, in.values(count, dtype), dtype);
    }
    if (in.remaining() != 0) ByteReader::fail("trailing bytes after core payloads");
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::Io, "cannot rename onto " + path.string());
    }
}

Tensor load_tensor(const std::filesystem::path& path) { return decode_tensor(read_file(path)); }
void save_tensor(const std::filesystem::path& path, const Tensor& t) { write_file_atomic(path, encode_tensor(t)); }
TTCores load_archive(const std::filesystem::path& path) { return decode_archive(read_file(path)); }
void save_archive(const std::filesystem::path& path, const TTCores& cores) {
    write_file_atomic(path, encode_archive(cores));
}

}  // namespace ttedge
