#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace locrad {

/// An ordered list of n points in [0,1]^d, stored row-major.
///
/// For d = 1 the permutation sorting the points is computed once at
/// construction; it is stable, so tied points keep their sample order.
class Sample {
public:
    Sample(std::vector<double> coords, std::size_t dim, std::uint64_t seed = 0);

    static Sample from_points(const std::vector<std::vector<double>>& points,
                              std::uint64_t seed = 0);
    static Sample from_values(std::vector<double> values, std::uint64_t seed = 0);

    std::size_t size() const noexcept { return coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    std::uint64_t seed() const noexcept { return seed_; }

    std::span<const double> point(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    double coord(std::size_t i, std::size_t k) const noexcept { return coords_[i * dim_ + k]; }
    std::span<const double> coords() const noexcept { return coords_; }

    /// Indices sorting the points ascending (d = 1 only; empty otherwise).
    const std::vector<std::size_t>& sorted_order() const noexcept { return order_; }

    /// Hash of the coordinates; binds explicit function classes to a sample.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

private:
    std::vector<double> coords_;
    std::size_t dim_;
    std::uint64_t seed_;
    std::vector<std::size_t> order_;
    std::uint64_t fingerprint_;
};

/// One point per row, d columns, header optional.
Sample load_sample_csv(const std::filesystem::path& path, std::uint64_t seed = 0);

}  // namespace locrad
