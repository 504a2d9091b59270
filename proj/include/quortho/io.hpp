#pragma once

// Serialization helpers: the on-disk JSON matrix format, shortest
// round-trip decimal formatting for CSV output, and the FNV-1a hash used
// by run manifests.

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "quortho/linalg.hpp"

namespace quortho {

// Matrix JSON format: {"rows": n, "cols": m, "entries": [[re, im], ...]}
// with entries in row-major order.  Vectors are stored as m = 1 matrices.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j);

void save_matrix(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::filesystem::path& path);

// Shortest decimal string that round-trips to the same double
// (std::to_chars).  Used for all CSV numeric output so that repeated runs
// are bit-identical.
std::string format_double(double x);

// FNV-1a 64-bit hash of a byte string; manifests record it per artifact.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// Write `contents` to `path`, creating parent directories as needed.
void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace quortho
