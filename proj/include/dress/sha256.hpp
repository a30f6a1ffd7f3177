#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>

namespace dress {

// FIPS 180-4 SHA-256, streaming interface.
class Sha256 {
public:
    using Digest = std::array<std::uint8_t, 32>;

    Sha256();
    void update(const void* data, std::size_t len);
    Digest finish();

    static Digest of(const void* data, std::size_t len);

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buf_;
    std::size_t buf_len_;
    std::uint64_t total_len_;
};

std::string hex_digest(const Sha256::Digest& d);

}  // namespace dress
