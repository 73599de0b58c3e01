#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "gnet/sequence.hpp"
#include "gnet/tensor.hpp"

namespace gnet {

struct CgrPoint {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const CgrPoint&) const = default;
};

// Corner of the unit square assigned to each base:
// A=(0,0), C=(0,1), G=(1,0), T=(1,1).
CgrPoint nucleotide_corner(Nucleotide base);

// Midpoint walk over the unit square, starting at the centre (0.5, 0.5).
// Point i is the midpoint of point i-1 and the corner of base i; the start
// point is not emitted. |result| == |seq|.
std::vector<CgrPoint> cgr_trajectory(const GeneSequence& seq);

// Square binary raster; row 0 is the top of the image, y grows upward.
class CgrImage {
  public:
    CgrImage() = default;
    explicit CgrImage(int resolution)
        : resolution_(resolution),
          pixels_(static_cast<std::size_t>(resolution) * resolution, 0) {}

    int resolution() const { return resolution_; }
    std::uint8_t at(int row, int col) const {
        return pixels_[static_cast<std::size_t>(row) * resolution_ + col];
    }
    void set(int row, int col) {
        pixels_[static_cast<std::size_t>(row) * resolution_ + col] = 1;
    }
    std::span<const std::uint8_t> pixels() const { return pixels_; }
    std::span<std::uint8_t> pixels() { return pixels_; }
    std::size_t set_pixel_count() const;

    bool operator==(const CgrImage&) const = default;

  private:
    int resolution_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// Occupancy raster of a trajectory. A point maps to
// col = min(floor(x*R), R-1), row = min(floor((1-y)*R), R-1); the pixel is 1
// no matter how many points land on it.
CgrImage rasterize(std::span<const CgrPoint> points, int resolution);

// n1 = n2 = resolution, n3 = gene count; slice k is the raster of gene k.
using CgrCube = Tensor3<std::uint8_t>;

CgrCube build_cube(const NetworkSample& sample, int resolution);

// Flat binary cube file: magic "GCB1", then n1, n2, n3 as little-endian
// 32-bit unsigned, then n1*n2*n3 bytes (slice-major, row-major within a
// slice), each 0 or 1.
void write_cube_file(const std::filesystem::path& path, const CgrCube& cube);
CgrCube read_cube_file(const std::filesystem::path& path);

// Binary PGM (P5) export of one slice; set pixels render black on white.
void write_pgm(const std::filesystem::path& path, const CgrCube& cube, int slice);
void write_pgm(const std::filesystem::path& path, const CgrImage& image);

}  // namespace gnet
