#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shapecat {

inline constexpr const char* kToolVersion = "1.0.0";

// FNV-1a 64-bit, used for config and dataset fingerprints.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes, std::uint64_t state = 0xcbf29ce484222325ull);
std::uint64_t fnv1a64(std::string_view text, std::uint64_t state = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t value);

// printf-style float formatting with stable output.
std::string fmt_fixed(double value, int decimals);
std::string fmt_sig(double value, int digits);

std::vector<unsigned char> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::string_view content);

std::string to_lower(std::string_view text);

double mean_of(std::span<const double> values);
// Population standard deviation (divide by N).
double population_stddev(std::span<const double> values);

}  // namespace shapecat
