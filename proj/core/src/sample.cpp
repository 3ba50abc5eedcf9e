#include "locrad/sample.hpp"

#include "locrad/csv.hpp"
#include "locrad/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace locrad {
namespace {

std::uint64_t hash_coords(std::span<const double> coords, std::size_t dim) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ dim;
    for (double c : coords) {
        // +0.0 and -0.0 are the same point.
        const auto bits = std::bit_cast<std::uint64_t>(c == 0.0 ? 0.0 : c);
        for (int b = 0; b < 64; b += 8) {
            h ^= (bits >> b) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace

Sample::Sample(std::vector<double> coords, std::size_t dim, std::uint64_t seed)
    : coords_(std::move(coords)), dim_(dim), seed_(seed) {
    if (dim_ == 0) throw InvalidArgument("sample dimension must be at least 1");
    if (coords_.empty()) throw InvalidArgument("sample must contain at least one point");
    if (coords_.size() % dim_ != 0) throw DimensionMismatch("coordinate count is not a multiple of the dimension");
    for (double c : coords_) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw InvalidArgument("sample coordinate outside [0,1]: " + format_real(c));
        }
    }
    if (dim_ == 1) {
        order_.resize(coords_.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return coords_[a] < coords_[b]; });
    }
    fingerprint_ = hash_coords(coords_, dim_);
}

Sample Sample::from_points(const std::vector<std::vector<double>>& points, std::uint64_t seed) {
    if (points.empty()) throw InvalidArgument("sample must contain at least one point");
    const std::size_t dim = points.front().size();
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionMismatch("points have different dimensions");
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return Sample(std::move(coords), dim, seed);
}

Sample Sample::from_values(std::vector<double> values, std::uint64_t seed) {
    return Sample(std::move(values), 1, seed);
}

Sample load_sample_csv(const std::filesystem::path& path, std::uint64_t seed) {
    const auto table = read_numeric_csv(path);
    if (table.rows.empty()) throw IoError("no points in " + path.string());
    return Sample::from_points(table.rows, seed);
}

}  // namespace locrad
