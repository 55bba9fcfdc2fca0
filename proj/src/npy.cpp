#include "irlsunwrap/npy.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>

namespace irlsunwrap {

static_assert(std::endian::native == std::endian::little,
              "NPY payloads are read and written in host byte order");

namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicLen = 6;

std::string header_dict(const Grid& data, NpyDtype dtype) {
    std::ostringstream h;
    h << "{'descr': '" << (dtype == NpyDtype::Float64 ? "<f8" : "<f4")
      << "', 'fortran_order': False, 'shape': (" << data.rows() << ", " << data.cols() << "), }";
    return h.str();
}

}  // namespace

std::string encode_npy(const Grid& data, NpyDtype dtype) {
    std::string dict = header_dict(data, dtype);
    const std::size_t prefix = kMagicLen + 2 + 2;
    const std::size_t total = (prefix + dict.size() + 1 + 63) / 64 * 64;
    dict.append(total - prefix - dict.size() - 1, ' ');
    dict.push_back('\n');

    std::string out(kMagic, kMagicLen);
    out.push_back('\x01');
    out.push_back('\x00');
    const auto hlen = static_cast<std::uint16_t>(dict.size());
    out.push_back(static_cast<char>(hlen & 0xff));
    out.push_back(static_cast<char>(hlen >> 8));
    out += dict;

    const auto count = static_cast<std::size_t>(data.size());
    if (dtype == NpyDtype::Float64) {
        out.append(reinterpret_cast<const char*>(data.data()), count * sizeof(double));
    } else {
        const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> f =
            data.cast<float>();
        out.append(reinterpret_cast<const char*>(f.data()), count * sizeof(float));
    }
    return out;
}

ArrayFile decode_npy(const std::string& bytes) {
    if (bytes.size() < kMagicLen + 4 || bytes.compare(0, kMagicLen, kMagic, kMagicLen) != 0) {
        throw FormatError("not an NPY file (bad magic)");
    }
    const auto major = static_cast<unsigned char>(bytes[kMagicLen]);
    std::size_t header_len = 0;
    std::size_t offset = 0;
    auto byte = [&](std::size_t i) { return static_cast<std::size_t>(static_cast<unsigned char>(bytes[i])); };
    if (major == 1) {
        header_len = byte(8) | (byte(9) << 8);
        offset = 10;
    } else if (major == 2 || major == 3) {
        if (bytes.size() < 12) throw FormatError("truncated NPY header");
        header_len = byte(8) | (byte(9) << 8) | (byte(10) << 16) | (byte(11) << 24);
        offset = 12;
    } else {
        throw FormatError("unsupported NPY version " + std::to_string(major));
    }
    if (bytes.size() < offset + header_len) {
        throw FormatError("truncated NPY header");
    }
    const std::string header = bytes.substr(offset, header_len);
    offset += header_len;

    static const std::regex descr_re(R"('descr'\s*:\s*'([^']*)')");
    static const std::regex fortran_re(R"('fortran_order'\s*:\s*(True|False))");
    static const std::regex shape_re(R"('shape'\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*,?\s*\))");
    std::smatch match;

    ArrayFile out;
    if (!std::regex_search(header, match, descr_re)) {
        throw FormatError("NPY header has no descr");
    }
    if (match[1] == "<f8") {
        out.dtype = NpyDtype::Float64;
    } else if (match[1] == "<f4") {
        out.dtype = NpyDtype::Float32;
    } else {
        throw FormatError("unsupported NPY dtype " + match[1].str());
    }
    if (!std::regex_search(header, match, fortran_re)) {
        throw FormatError("NPY header has no fortran_order");
    }
    const bool fortran = match[1] == "True";
    if (!std::regex_search(header, match, shape_re)) {
        throw FormatError("NPY shape must be two-dimensional");
    }
    const auto rows = static_cast<Eigen::Index>(std::stoll(match[1]));
    const auto cols = static_cast<Eigen::Index>(std::stoll(match[2]));

    const std::size_t width = out.dtype == NpyDtype::Float64 ? 8 : 4;
    const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (bytes.size() - offset != count * width) {
        throw FormatError("NPY payload length does not match shape");
    }

    const char* payload = bytes.data() + offset;
    Eigen::VectorXd flat(static_cast<Eigen::Index>(count));
    if (out.dtype == NpyDtype::Float64) {
        std::memcpy(flat.data(), payload, count * width);
    } else {
        Eigen::VectorXf f(static_cast<Eigen::Index>(count));
        std::memcpy(f.data(), payload, count * width);
        flat = f.cast<double>();
    }
    if (fortran) {
        out.data = Eigen::Map<const Eigen::MatrixXd>(flat.data(), rows, cols);
    } else {
        out.data = Eigen::Map<const Grid>(flat.data(), rows, cols);
    }
    return out;
}

ArrayFile read_npy(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_npy(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_npy(const std::filesystem::path& path, const Grid& data, NpyDtype dtype) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    const std::string bytes = encode_npy(data, dtype);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace irlsunwrap
