#include "rawmamba/serialize.hpp"

#include <cstring>
#include <fstream>

namespace rawmamba {

namespace {

// All payloads are little-endian; this code assumes a little-endian host,
// which is checked once at startup.
bool host_is_le() {
    const uint16_t probe = 1;
    uint8_t b;
    std::memcpy(&b, &probe, 1);
    return b == 1;
}

void append(std::string& out, const void* p, size_t n) {
    out.append(reinterpret_cast<const char*>(p), n);
}

template <typename T>
T read_pod(const std::string& s, size_t& pos, const std::string& origin) {
    if (pos + sizeof(T) > s.size()) throw IoError("truncated RMT1 data: " + origin);
    T v;
    std::memcpy(&v, s.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

}  // namespace

std::string rmt_bytes(const Tensor& t, Dtype dtype) {
    if (!host_is_le()) throw IoError("RMT1 serialization requires a little-endian host");
    std::string out;
    out.reserve(16 + static_cast<size_t>(t.size()) * 8);
    out.append("RMT1", 4);
    out.push_back(1);
    out.push_back(static_cast<char>(dtype));
    out.push_back(0);
    out.push_back(0);
    uint32_t rank = static_cast<uint32_t>(t.rank());
    append(out, &rank, sizeof(rank));
    for (int64_t i = 0; i < t.rank(); ++i) {
        uint64_t d = static_cast<uint64_t>(t.dim(i));
        append(out, &d, sizeof(d));
    }
    if (dtype == Dtype::f64) {
        append(out, t.data(), static_cast<size_t>(t.size()) * sizeof(double));
    } else {
        for (int64_t i = 0; i < t.size(); ++i) {
            float f = static_cast<float>(t[i]);
            append(out, &f, sizeof(f));
        }
    }
    return out;
}

Tensor rmt_parse(const std::string& bytes, const std::string& origin) {
    if (!host_is_le()) throw IoError("RMT1 parsing requires a little-endian host");
    if (bytes.size() < 12 || bytes.compare(0, 4, "RMT1") != 0)
        throw IoError("not an RMT1 file: " + origin);
    size_t pos = 4;
    uint8_t version = static_cast<uint8_t>(bytes[pos++]);
    if (version != 1) throw IoError("unsupported RMT1 version in " + origin);
    uint8_t dtype = static_cast<uint8_t>(bytes[pos++]);
    if (dtype != 1 && dtype != 2) throw IoError("unknown RMT1 dtype in " + origin);
    pos += 2;  // reserved
    uint32_t rank = read_pod<uint32_t>(bytes, pos, origin);
    if (rank > 16) throw IoError("implausible RMT1 rank in " + origin);
    Shape shape(rank);
    for (uint32_t i = 0; i < rank; ++i) {
        uint64_t d = read_pod<uint64_t>(bytes, pos, origin);
        if (d == 0 || d > (1ULL << 32)) throw IoError("bad RMT1 extent in " + origin);
        shape[i] = static_cast<int64_t>(d);
    }
    int64_t n = shape_numel(shape);
    size_t elem = dtype == 2 ? 8 : 4;
    if (pos + static_cast<size_t>(n) * elem != bytes.size())
        throw IoError("RMT1 payload size mismatch in " + origin);
    Tensor t = Tensor::uninit(shape);
    double* out = t.mutable_data();
    if (dtype == 2) {
        std::memcpy(out, bytes.data() + pos, static_cast<size_t>(n) * 8);
    } else {
        for (int64_t i = 0; i < n; ++i) {
            float f;
            std::memcpy(&f, bytes.data() + pos + static_cast<size_t>(i) * 4, 4);
            out[i] = static_cast<double>(f);
        }
    }
    return t;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open for write: " + tmp.string());
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw IoError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void save_rmt(const std::filesystem::path& path, const Tensor& t, Dtype dtype) {
    atomic_write_file(path, rmt_bytes(t, dtype));
}

Tensor load_rmt(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return rmt_parse(bytes, path.string());
}

}  // namespace rawmamba
