#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>

#include "subspace/matrix.hpp"
#include "subspace/synth.hpp"

namespace testing_support {

inline subspace::Matrix random_matrix(std::size_t rows, std::size_t cols, subspace::synth::Rng& rng) {
    subspace::Matrix m(rows, cols);
    for (double& v : m.data()) v = rng.normal();
    return m;
}

inline Eigen::MatrixXd to_eigen(const subspace::Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

inline subspace::Matrix from_eigen(const Eigen::MatrixXd& e) {
    subspace::Matrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
    return m;
}

inline double relative_error(const subspace::Matrix& got, const subspace::Matrix& want) {
    const double scale = subspace::frobenius_norm(want);
    const double diff = subspace::frobenius_norm(got - want);
    return scale > 0.0 ? diff / scale : diff;
}

/// Largest |Q^T Q - I| entry.
inline double orthogonality_error(const subspace::Matrix& q) {
    const subspace::Matrix g = q.transposed() * q;
    return subspace::max_abs_diff(g, subspace::Matrix::identity(g.rows()));
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("subspace_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace testing_support
