#include "gnet/cgr.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace gnet {

CgrPoint nucleotide_corner(Nucleotide base) {
    switch (base) {
        case Nucleotide::A: return {0.0, 0.0};
        case Nucleotide::C: return {0.0, 1.0};
        case Nucleotide::G: return {1.0, 0.0};
        case Nucleotide::T: return {1.0, 1.0};
    }
    return {0.0, 0.0};
}

std::vector<CgrPoint> cgr_trajectory(const GeneSequence& seq) {
    std::vector<CgrPoint> points;
    points.reserve(seq.bases.size());
    CgrPoint current{0.5, 0.5};
    for (Nucleotide base : seq.bases) {
        const CgrPoint corner = nucleotide_corner(base);
        current.x = 0.5 * (current.x + corner.x);
        current.y = 0.5 * (current.y + corner.y);
        points.push_back(current);
    }
    return points;
}

namespace {

inline void plot_points(std::span<const CgrPoint> points, int resolution,
                        std::uint8_t* pixels) {
    const double r = static_cast<double>(resolution);
    for (const CgrPoint& p : points) {
        int col = static_cast<int>(std::floor(p.x * r));
        int row = static_cast<int>(std::floor((1.0 - p.y) * r));
        col = std::clamp(col, 0, resolution - 1);
        row = std::clamp(row, 0, resolution - 1);
        pixels[static_cast<std::size_t>(row) * resolution + col] = 1;
    }
}

}  // namespace

std::size_t CgrImage::set_pixel_count() const {
    return static_cast<std::size_t>(
        std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

CgrImage rasterize(std::span<const CgrPoint> points, int resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("rasterize: resolution must be >= 2");
    }
    CgrImage image(resolution);
    plot_points(points, resolution, image.pixels().data());
    return image;
}

CgrCube build_cube(const NetworkSample& sample, int resolution) {
    if (sample.genes.empty()) {
        throw std::invalid_argument("build_cube: sample has no genes");
    }
    if (resolution < 2) {
        throw std::invalid_argument("build_cube: resolution must be >= 2");
    }
    CgrCube cube(resolution, resolution, static_cast<int>(sample.genes.size()));
    for (std::size_t k = 0; k < sample.genes.size(); ++k) {
        const auto points = cgr_trajectory(sample.genes[k]);
        plot_points(points, resolution, cube.slice(static_cast<int>(k)).data());
    }
    return cube;
}

namespace {

constexpr char kCubeMagic[4] = {'G', 'C', 'B', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xff),
                           static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff),
                           static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
        throw std::runtime_error("truncated cube file: " + path.string());
    }
    return static_cast<std::uint32_t>(bytes[0]) |
           (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

void write_cube_file(const std::filesystem::path& path, const CgrCube& cube) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write cube file: " + path.string());
    }
    out.write(kCubeMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(cube.n1()));
    put_u32(out, static_cast<std::uint32_t>(cube.n2()));
    put_u32(out, static_cast<std::uint32_t>(cube.n3()));
    out.write(reinterpret_cast<const char*>(cube.data()),
              static_cast<std::streamsize>(cube.size()));
    if (!out) {
        throw std::runtime_error("failed writing cube file: " + path.string());
    }
}

CgrCube read_cube_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read cube file: " + path.string());
    }
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kCubeMagic, 4) != 0) {
        throw std::runtime_error("not a cube file: " + path.string());
    }
    const std::uint32_t n1 = get_u32(in, path);
    const std::uint32_t n2 = get_u32(in, path);
    const std::uint32_t n3 = get_u32(in, path);
    if (n1 == 0 || n2 == 0 || n3 == 0) {
        throw std::runtime_error("cube file with zero dimension: " + path.string());
    }
    CgrCube cube(static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(n3));
    if (!in.read(reinterpret_cast<char*>(cube.data()),
                 static_cast<std::streamsize>(cube.size()))) {
        throw std::runtime_error("truncated cube file: " + path.string());
    }
    for (std::size_t i = 0; i < cube.size(); ++i) {
        if (cube.data()[i] > 1) {
            throw std::runtime_error("cube file with non-binary byte: " + path.string());
        }
    }
    return cube;
}

namespace {

void write_pgm_impl(const std::filesystem::path& path,
                    const std::uint8_t* pixels, int resolution) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write PGM file: " + path.string());
    }
    out << "P5\n" << resolution << ' ' << resolution << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(resolution));
    for (int r = 0; r < resolution; ++r) {
        for (int c = 0; c < resolution; ++c) {
            row[static_cast<std::size_t>(c)] =
                pixels[static_cast<std::size_t>(r) * resolution + c] ? 0 : 255;
        }
        out.write(reinterpret_cast<const char*>(row.data()), resolution);
    }
}

}  // namespace

void write_pgm(const std::filesystem::path& path, const CgrCube& cube, int slice) {
    if (slice < 0 || slice >= cube.n3()) {
        throw std::out_of_range("write_pgm: slice index out of range");
    }
    if (cube.n1() != cube.n2()) {
        throw std::invalid_argument("write_pgm: cube slices are not square");
    }
    write_pgm_impl(path, cube.slice(slice).data(), cube.n1());
}

void write_pgm(const std::filesystem::path& path, const CgrImage& image) {
    write_pgm_impl(path, image.pixels().data(), image.resolution());
}

}  // namespace gnet
