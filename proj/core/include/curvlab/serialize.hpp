#pragma once

// Tensor fixture format:
//   {"n": 2, "entries": [[re, im], ...]}
// with n^4 entries in big-endian (i,j,k,l) order. Floats are written with
// 17 significant digits so a write/read cycle is exact.

#include <filesystem>
#include <string>
#include <string_view>

#include "curvlab/curvature.hpp"

namespace curvlab {

std::string tensor_to_json(const CurvatureTensor& r);

/// Parses and validates through CurvatureTensor::from_entries. Malformed
/// documents raise InvalidArgument.
CurvatureTensor tensor_from_json(std::string_view text, double tol = kSymTol);

CurvatureTensor load_tensor(const std::filesystem::path& path, double tol = kSymTol);
void save_tensor(const std::filesystem::path& path, const CurvatureTensor& r);

}  // namespace curvlab
