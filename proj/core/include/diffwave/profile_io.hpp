#pragma once

#include <filesystem>
#include <iosfwd>

#include "diffwave/wave.hpp"

namespace diffwave {

// Columnar profile format:
//
//   # diffwave-profile 1
//   # <key> = <value>        model parameters, domain, anchor, residuals
//   # columns: xi phi dphi
//   <xi> <phi> <dphi>        one sample per line, 17 significant digits
//
// Reading back reproduces the samples bit for bit.

void write_profile(std::ostream& os, const DiffusionWave& wave);
DiffusionWave read_profile(std::istream& is);

void save_profile(const std::filesystem::path& path, const DiffusionWave& wave);
DiffusionWave load_profile(const std::filesystem::path& path);

}  // namespace diffwave
