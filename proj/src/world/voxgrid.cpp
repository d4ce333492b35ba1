#include "voxshift/world/voxgrid.hpp"

#include "voxshift/errors.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <unordered_set>

namespace voxshift::world {

namespace {

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    void require(std::size_t n, const char* what) const {
        if (remaining() < n) throw FormatError(std::string("truncated file while reading ") + what, pos_);
    }

    std::uint8_t u8(const char* what) {
        require(1, what);
        return bytes_[pos_++];
    }

    std::uint16_t u16(const char* what) {
        require(2, what);
        const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t u32(const char* what) {
        require(4, what);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 4;
        return v;
    }

    std::int32_t i32(const char* what) { return static_cast<std::int32_t>(u32(what)); }

    std::string text(std::size_t n, const char* what) {
        require(n, what);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

} // namespace

VoxelWorld load_world(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    if (r.text(4, "magic") != "VOXG") throw FormatError("bad magic, expected VOXG", 0);

    const auto version_at = r.offset();
    const auto version = r.u16("version");
    if (version != kVoxgridVersion) {
        throw FormatError("unsupported voxgrid version " + std::to_string(version), version_at);
    }

    Coord origin;
    origin.x = r.i32("origin");
    origin.y = r.i32("origin");
    origin.z = r.i32("origin");

    const auto dims_at = r.offset();
    std::uint32_t raw[3];
    for (auto& v : raw) v = r.u32("dims");
    for (auto v : raw) {
        if (v == 0 || v > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
            throw FormatError("dimension out of range", dims_at);
        }
    }
    const Dims dims{static_cast<int>(raw[0]), static_cast<int>(raw[1]), static_cast<int>(raw[2])};

    const auto count_at = r.offset();
    const auto palette_count = r.u16("palette count");
    if (palette_count == 0) throw FormatError("empty palette", count_at);

    std::vector<std::string> palette;
    palette.reserve(palette_count);
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < palette_count; ++i) {
        const auto entry_at = r.offset();
        const auto len = r.u8("palette entry length");
        if (len == 0) throw FormatError("empty palette name", entry_at);
        auto name = r.text(len, "palette entry");
        if (!seen.insert(name).second) throw FormatError("duplicate palette name '" + name + "'", entry_at);
        palette.push_back(std::move(name));
    }

    const auto payload_at = r.offset();
    const auto cells = dims.volume();
    if (cells > std::numeric_limits<std::size_t>::max() / 2 || r.remaining() != cells * 2) {
        throw FormatError("payload is " + std::to_string(r.remaining()) + " bytes, expected " +
                              std::to_string(cells * 2) + " for " + std::to_string(cells) + " cells",
                          payload_at);
    }
    std::vector<PaletteIndex> grid(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const auto at = r.offset();
        const auto v = r.u16("payload");
        if (v >= palette_count) {
            throw FormatError("palette index " + std::to_string(v) + " out of range", at);
        }
        grid[i] = v;
    }
    return VoxelWorld(origin, dims, std::move(palette), std::move(grid));
}

std::vector<std::uint8_t> save_world(const VoxelWorld& world) {
    std::vector<std::uint8_t> out;
    out.reserve(32 + world.volume() * 2);
    for (char ch : std::string_view("VOXG")) out.push_back(static_cast<std::uint8_t>(ch));
    put_u16(out, kVoxgridVersion);
    put_u32(out, static_cast<std::uint32_t>(world.origin().x));
    put_u32(out, static_cast<std::uint32_t>(world.origin().y));
    put_u32(out, static_cast<std::uint32_t>(world.origin().z));
    put_u32(out, static_cast<std::uint32_t>(world.dims().sx));
    put_u32(out, static_cast<std::uint32_t>(world.dims().sy));
    put_u32(out, static_cast<std::uint32_t>(world.dims().sz));
    put_u16(out, static_cast<std::uint16_t>(world.palette().size()));
    for (const auto& name : world.palette()) {
        if (name.size() > 255) throw InvalidArgument("palette name longer than 255 bytes: " + name);
        out.push_back(static_cast<std::uint8_t>(name.size()));
        out.insert(out.end(), name.begin(), name.end());
    }
    for (auto v : world.grid()) put_u16(out, v);
    return out;
}

VoxelWorld read_world_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open world file " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_world(bytes);
}

void write_world_file(const std::filesystem::path& path, const VoxelWorld& world) {
    const auto bytes = save_world(world);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write world file " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing world file " + path.string());
}

} // namespace voxshift::world
