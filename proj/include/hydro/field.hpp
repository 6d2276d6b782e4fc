#pragma once

#include <cassert>
#include <vector>

namespace hydro {

/// Number of ghost layers kept on every side of a field. Two layers cover
/// the widest stencil in the code: a second-order face value whose donor is
/// a first-layer ghost cell.
inline constexpr int kGhost = 2;

/// Dense 2D array with ghost layers, indexed (i, j) with
/// i in [-kGhost, nx + kGhost). Row-major in j, contiguous in i.
template <class T>
class Field {
public:
    Field() = default;
    Field(int nx, int ny, T init = T{})
        : nx_(nx), ny_(ny), stride_(nx + 2 * kGhost),
          data_(static_cast<size_t>(stride_) * (ny + 2 * kGhost), init) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    T& operator()(int i, int j) {
        assert(i >= -kGhost && i < nx_ + kGhost && j >= -kGhost && j < ny_ + kGhost);
        return data_[static_cast<size_t>(j + kGhost) * stride_ + (i + kGhost)];
    }
    const T& operator()(int i, int j) const {
        assert(i >= -kGhost && i < nx_ + kGhost && j >= -kGhost && j < ny_ + kGhost);
        return data_[static_cast<size_t>(j + kGhost) * stride_ + (i + kGhost)];
    }

    void fill(T v) { data_.assign(data_.size(), v); }

    /// Raw storage including ghosts, for whole-field scans.
    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

private:
    int nx_ = 0, ny_ = 0, stride_ = 0;
    std::vector<T> data_;
};

} // namespace hydro
