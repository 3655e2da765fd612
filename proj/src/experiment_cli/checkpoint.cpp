#include "fnls/checkpoint.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

constexpr char kMagic[5] = {'F', 'N', 'L', 'S', '1'};

void put_u(std::vector<unsigned char>& out, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double x) { put_u(out, std::bit_cast<std::uint64_t>(x), 8); }

struct Reader {
    const std::vector<unsigned char>& b;
    std::size_t pos = 0;

    std::uint64_t u(int bytes) {
        if (pos + bytes > b.size()) throw CheckpointError(CheckpointError::Kind::Truncated, "checkpoint truncated in header");
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(b[pos + i]) << (8 * i);
        pos += bytes;
        return v;
    }
    double f64() { return std::bit_cast<double>(u(8)); }
};

}  // namespace

std::vector<unsigned char> encode_checkpoint(const Checkpoint& c) {
    std::vector<unsigned char> out;
    out.reserve(kCheckpointHeaderBytes + 16 * c.payload.size());
    out.insert(out.end(), kMagic, kMagic + 5);
    put_u(out, static_cast<std::uint64_t>(c.d), 1);
    put_u(out, static_cast<std::uint64_t>(c.n), 4);
    put_f64(out, c.L);
    put_f64(out, c.alpha);
    put_u(out, c.branch == Branch::Hartree ? 1 : 0, 1);
    put_f64(out, c.t);
    for (const cplx& z : c.payload) {
        put_f64(out, z.real());
        put_f64(out, z.imag());
    }
    return out;
}

Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 5) throw CheckpointError(CheckpointError::Kind::Truncated, "checkpoint shorter than its magic");
    if (std::memcmp(bytes.data(), kMagic, 5) != 0)
        throw CheckpointError(CheckpointError::Kind::Magic, "not a checkpoint (bad magic)");
    Reader r{bytes, 5};
    Checkpoint c;
    c.d = static_cast<int>(r.u(1));
    const std::uint64_t n = r.u(4);
    c.L = r.f64();
    c.alpha = r.f64();
    const auto br = r.u(1);
    c.t = r.f64();
    if (c.d < 2 || c.d > 5) throw CheckpointError(CheckpointError::Kind::Dimension, "checkpoint dimension out of range");
    if (n < 4 || (n & (n - 1)) != 0 || n > (1u << 20))
        throw CheckpointError(CheckpointError::Kind::Dimension, "checkpoint grid size invalid");
    if (br > 1) throw CheckpointError(CheckpointError::Kind::Dimension, "checkpoint branch tag invalid");
    c.n = static_cast<int>(n);
    c.branch = br ? Branch::Hartree : Branch::Power;
    // n^d must fit the remaining bytes without overflow
    const double points = std::pow(static_cast<double>(n), c.d);
    if (points > 1e12) throw CheckpointError(CheckpointError::Kind::Dimension, "checkpoint grid too large");
    const std::size_t count = static_cast<std::size_t>(points);
    const std::size_t need = kCheckpointHeaderBytes + 16 * count;
    if (bytes.size() < need)
        throw CheckpointError(CheckpointError::Kind::Truncated, "checkpoint payload truncated: " +
                                                                    std::to_string(bytes.size()) + " of " +
                                                                    std::to_string(need) + " bytes");
    if (bytes.size() > need) throw CheckpointError(CheckpointError::Kind::Truncated, "checkpoint has trailing bytes");
    c.payload.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double re = r.f64();
        const double im = r.f64();
        c.payload[i] = {re, im};
    }
    return c;
}

void write_checkpoint(const std::string& path, const ComplexField& u, const ModelParams& p, double t) {
    const ComplexField f = u.is_physical() ? u : to_physical(u);
    Checkpoint c;
    c.d = f.grid().dim();
    c.n = f.grid().n();
    c.L = f.grid().half_length();
    c.alpha = p.alpha;
    c.branch = p.branch;
    c.t = t;
    c.payload = f.values();
    const auto bytes = encode_checkpoint(c);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError(CheckpointError::Kind::Io, "cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CheckpointError(CheckpointError::Kind::Io, "write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError(CheckpointError::Kind::Io, "cannot open checkpoint: " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

ComplexField checkpoint_field(const Checkpoint& c, const GridPtr& grid) {
    if (c.d != grid->dim())
        throw CheckpointError(CheckpointError::Kind::Dimension, "checkpoint has d = " + std::to_string(c.d) +
                                                                    ", scenario uses d = " + std::to_string(grid->dim()));
    if (c.n != grid->n() || c.L != grid->half_length())
        throw CheckpointError(CheckpointError::Kind::Dimension, "checkpoint grid (n, L) differs from the scenario grid");
    return ComplexField(grid, c.payload);
}

}  // namespace fnls
