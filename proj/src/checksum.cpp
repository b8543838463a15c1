#include "qsvm/checksum.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qsvm {

void Fnv1a::update(std::span<const std::byte> bytes) {
    for (std::byte b : bytes) {
        hash_ ^= static_cast<std::uint64_t>(b);
        hash_ *= 0x100000001b3ULL;
    }
}

std::string Fnv1a::hex() const { return to_hex(hash_); }

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::string file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Fnv1a h;
    std::array<char, 1 << 14> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = static_cast<std::size_t>(in.gcount());
        h.update(std::as_bytes(std::span(buf.data(), got)));
    }
    return h.hex();
}

}  // namespace qsvm
