#include "pinn/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "pinn/errors.hpp"

namespace pinn {

namespace {

constexpr char kMagic[8] = {'P', 'I', 'N', 'N', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

bool get_u32(std::istream& is, std::uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
        static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
    return true;
}

void put_f64(std::ostream& os, double d) {
    // x86-64 doubles are already little-endian IEEE-754
    os.write(reinterpret_cast<const char*>(&d), 8);
}

} // namespace

void save_checkpoint(const Network& net, const std::filesystem::path& path) {
    validate_shapes(net);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open checkpoint for writing: " + path.string());

    os.write(kMagic, 8);
    put_u32(os, kFormatVersion);
    put_u32(os, static_cast<std::uint32_t>(net.activation));
    auto sizes = net.layer_sizes();
    put_u32(os, static_cast<std::uint32_t>(sizes.size()));
    for (std::size_t s : sizes) put_u32(os, static_cast<std::uint32_t>(s));

    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const auto& w = net.weights[l];
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) put_f64(os, w(i, j));
        for (Eigen::Index i = 0; i < net.biases[l].size(); ++i) put_f64(os, net.biases[l][i]);
    }
    os.flush();
    if (!os) throw IoError("write failed: " + path.string());
}

Network load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open checkpoint: " + path.string());

    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
        throw CheckpointError(CheckpointError::Kind::malformed_header,
                              "bad magic in " + path.string());
    std::uint32_t version = 0, act_tag = 0, n_sizes = 0;
    if (!get_u32(is, version) || !get_u32(is, act_tag) || !get_u32(is, n_sizes))
        throw CheckpointError(CheckpointError::Kind::malformed_header,
                              "header cut short in " + path.string());
    if (version != kFormatVersion)
        throw CheckpointError(CheckpointError::Kind::malformed_header,
                              "unsupported format version " + std::to_string(version));
    if (act_tag > 3)
        throw CheckpointError(CheckpointError::Kind::malformed_header,
                              "unknown activation tag " + std::to_string(act_tag));
    if (n_sizes < 2 || n_sizes > 1024)
        throw CheckpointError(CheckpointError::Kind::shape_mismatch,
                              "implausible layer count " + std::to_string(n_sizes));

    std::vector<std::size_t> sizes(n_sizes);
    for (auto& s : sizes) {
        std::uint32_t v = 0;
        if (!get_u32(is, v))
            throw CheckpointError(CheckpointError::Kind::malformed_header,
                                  "layer size list cut short in " + path.string());
        s = v;
    }
    if (sizes.front() != 2 || sizes.back() != 1)
        throw CheckpointError(CheckpointError::Kind::shape_mismatch,
                              "layer sizes must run from 2 to 1");
    for (std::size_t s : sizes)
        if (s < 1 || s > 100000)
            throw CheckpointError(CheckpointError::Kind::shape_mismatch, "invalid layer width");

    Network net;
    net.activation = static_cast<Activation>(act_tag);
    for (std::size_t l = 1; l < sizes.size(); ++l) {
        const auto rows = static_cast<Eigen::Index>(sizes[l]);
        const auto cols = static_cast<Eigen::Index>(sizes[l - 1]);
        Eigen::MatrixXd w(rows, cols);
        Eigen::VectorXd b(rows);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                if (!is.read(reinterpret_cast<char*>(&w(i, j)), 8))
                    throw CheckpointError(CheckpointError::Kind::truncated,
                                          "payload cut short in " + path.string());
        for (Eigen::Index i = 0; i < rows; ++i)
            if (!is.read(reinterpret_cast<char*>(&b[i]), 8))
                throw CheckpointError(CheckpointError::Kind::truncated,
                                      "payload cut short in " + path.string());
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
    }
    // exactly one network per file
    char extra;
    if (is.read(&extra, 1))
        throw CheckpointError(CheckpointError::Kind::truncated,
                              "trailing bytes after payload in " + path.string());
    return net;
}

} // namespace pinn
