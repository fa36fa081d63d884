#include "qht/field_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "field I/O assumes a little-endian host");

namespace qht {

namespace {

constexpr char kMagic[4] = {'Q', 'H', 'T', '1'};

template <typename T>
void write_pod(std::ofstream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& is, const std::string& path) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("truncated field file: " + path);
    return v;
}

} // namespace

void write_field(const std::string& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.n()));
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.points_per_axis()));
    write_pod<std::uint32_t>(os, f.grid.scheme() == Scheme::central2 ? 0u : 1u);
    write_pod<std::uint64_t>(os, static_cast<std::uint64_t>(f.v.size()));
    os.write(reinterpret_cast<const char*>(f.v.data()),
             static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    if (!os) throw IoError("write failed: " + path);
    os.close();

    nlohmann::json side{
        {"format", "QHT1"},
        {"n", f.grid.n()},
        {"points_per_axis", f.grid.points_per_axis()},
        {"scheme", scheme_name(f.grid.scheme())},
        {"count", f.v.size()},
        {"mean", mean(f)},
        {"c0_norm", c0_norm(f)},
    };
    std::ofstream js(path + ".json");
    if (!js) throw IoError("cannot open for writing: " + path + ".json");
    js << side.dump(2) << "\n";
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != std::string(kMagic, 4))
        throw IoError("bad magic in field file: " + path);
    const auto n = read_pod<std::uint32_t>(is, path);
    const auto N = read_pod<std::uint32_t>(is, path);
    const auto scheme_tag = read_pod<std::uint32_t>(is, path);
    const auto count = read_pod<std::uint64_t>(is, path);
    if (scheme_tag > 1) throw IoError("unknown scheme tag in field file: " + path);

    TorusGrid grid(static_cast<int>(n), static_cast<int>(N),
                   scheme_tag == 0 ? Scheme::central2 : Scheme::spectral);
    if (count != grid.points())
        throw IoError("value count does not match grid size in: " + path);
    ScalarField f(grid);
    is.read(reinterpret_cast<char*>(f.v.data()),
            static_cast<std::streamsize>(f.v.size() * sizeof(double)));
    if (!is) throw IoError("truncated field file: " + path);
    return f;
}

} // namespace qht
