#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "irlsunwrap/phase.hpp"

namespace irlsunwrap {

/// Malformed, truncated, unreadable or unsupported array file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NpyDtype { Float64, Float32 };

/// A 2-D little-endian float array in NPY layout.
///
/// File grammar: the six bytes "\x93NUMPY", a major/minor version byte pair
/// (1.0 is written; 1.0, 2.0 and 3.0 are read), a little-endian header
/// length (uint16 for 1.x, uint32 otherwise), then an ASCII Python dict
/// literal {'descr': '<f8' | '<f4', 'fortran_order': False | True,
/// 'shape': (N, M), } padded with spaces and a final '\n' so that the
/// payload starts at a multiple of 64 bytes. The payload is N*M values,
/// row-major unless fortran_order is True.
struct ArrayFile {
    NpyDtype dtype = NpyDtype::Float64;
    Grid data;
};

ArrayFile read_npy(const std::filesystem::path& path);
void write_npy(const std::filesystem::path& path, const Grid& data,
               NpyDtype dtype = NpyDtype::Float64);

/// Serialized bytes of an array; write_npy writes exactly these.
std::string encode_npy(const Grid& data, NpyDtype dtype = NpyDtype::Float64);
ArrayFile decode_npy(const std::string& bytes);

}  // namespace irlsunwrap
