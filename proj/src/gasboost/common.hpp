#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gasboost {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// splitmix64 step; decorrelates nearby integer seeds before they feed mt19937_64.
std::uint64_t splitmix64(std::uint64_t x);

// Combines two 64-bit values into a derived seed. Used to give every
// (run, stage) pair its own independent random stream.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// FNV-1a over the bytes of a string.
std::uint64_t hash_string(const std::string& s);

// Shortest round-trip decimal text for a double, locale independent.
std::string format_double(double v);

// Fixed-precision decimal text, locale independent (report tables, SVG coords).
std::string format_fixed(double v, int decimals);

}  // namespace gasboost
