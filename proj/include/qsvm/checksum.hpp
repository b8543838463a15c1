#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace qsvm {

/// 64-bit FNV-1a. Not cryptographic; used to fingerprint files and matrices.
class Fnv1a {
public:
    void update(std::span<const std::byte> bytes);
    void update(std::string_view text) { update(std::as_bytes(std::span(text.data(), text.size()))); }
    void update(double value) { update(std::as_bytes(std::span(&value, 1))); }
    void update(std::int64_t value) { update(std::as_bytes(std::span(&value, 1))); }

    std::uint64_t value() const { return hash_; }
    std::string hex() const;

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t value);

/// Checksum of a file's bytes. Throws std::runtime_error when unreadable.
std::string file_checksum(const std::filesystem::path& path);

}  // namespace qsvm
