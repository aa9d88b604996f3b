#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meshplace {

struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

enum class CellClass : std::uint8_t {
    Interest,           // cover=1 place=1
    InterestNoPlace,    // cover=1 place=0
    OptionalPlaceable,  // cover=0 place=1
    OptionalBlocked,    // cover=0 place=0
};

// Gridded region: per-cell coverage-required and node-placement flags.
// x indexes columns, y indexes rows, origin at the top-left corner.
//
// A region is solvable only if at least one cell has cover=1 and place=1;
// solver entry points reject regions without one. Parsing and serialization
// deliberately accept any flag combination so partial instances can still be
// inspected and edited as text.
class Region {
public:
    // All cells start optional and placeable (cover=0, place=1).
    Region(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool in_bounds(Cell c) const { return in_bounds(c.x, c.y); }

    bool cover(int x, int y) const { return cover_[idx(x, y)] != 0; }
    bool place(int x, int y) const { return place_[idx(x, y)] != 0; }
    void set_cover(int x, int y, bool v) { cover_[idx(x, y)] = v ? 1 : 0; }
    void set_place(int x, int y, bool v) { place_[idx(x, y)] = v ? 1 : 0; }

    // Throws std::out_of_range for coordinates outside the grid.
    CellClass cell_class(int x, int y) const;

    long interest_cell_count() const;            // cells with cover=1
    long optional_cell_count() const;            // cells with cover=0
    long placeable_interest_count() const;       // cells with cover=1 and place=1
    std::vector<Cell> placeable_interest_cells() const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    std::size_t idx(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> cover_;
    std::vector<std::uint8_t> place_;
};

struct RegionParseError : std::runtime_error {
    RegionParseError(int line, int column, const std::string& what);
    int line;    // 1-based; the header is line 1
    int column;  // 1-based
};

// Text format: header "width height", then height rows of width characters.
//   I: cover=1 place=1    i: cover=1 place=0
//   o: cover=0 place=1    x: cover=0 place=0
// Rows are newline-separated; a trailing newline is tolerated.
Region parse_region(std::string_view text);

// Canonical form: no trailing newline. parse_region(serialize_region(r)) == r.
std::string serialize_region(const Region& region);

struct RegionGenParams {
    int width = 200;
    int height = 200;
    int interest_blob_count = 12;
    int interest_radius_min = 8;
    int interest_radius_max = 20;
    int prohibited_blob_count = 5;
    int prohibited_radius_min = 4;
    int prohibited_radius_max = 10;
    std::uint64_t seed = 1;
};

// Deterministic in params. Paints interest blobs (cover=1, place=1) first,
// then prohibited blobs (cover=0, place=0), which win on overlap; background
// cells stay optional and placeable. Blobs are open discs (dx^2+dy^2 < rad^2)
// clipped at the borders. Draw order per blob: center x, center y, radius --
// part of the determinism contract.
// Throws std::invalid_argument for bad params and std::runtime_error when the
// result has no placeable interest cell.
Region generate_region(const RegionGenParams& params);

Region load_region_file(const std::string& path);
void save_region_file(const Region& region, const std::string& path);

}  // namespace meshplace
