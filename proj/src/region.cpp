#include "meshplace/region.hpp"

#include <fstream>
#include <sstream>

#include "meshplace/rng.hpp"

namespace meshplace {

namespace {

std::string parse_message(int line, int column, const std::string& what) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << what;
    return os.str();
}

}  // namespace

RegionParseError::RegionParseError(int line_in, int column_in, const std::string& what)
    : std::runtime_error(parse_message(line_in, column_in, what)), line(line_in), column(column_in) {}

Region::Region(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("region dimensions must be positive");
    const std::size_t cells = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    cover_.assign(cells, 0);
    place_.assign(cells, 1);
}

CellClass Region::cell_class(int x, int y) const {
    if (!in_bounds(x, y)) throw std::out_of_range("cell coordinates out of bounds");
    if (cover(x, y)) return place(x, y) ? CellClass::Interest : CellClass::InterestNoPlace;
    return place(x, y) ? CellClass::OptionalPlaceable : CellClass::OptionalBlocked;
}

long Region::interest_cell_count() const {
    long n = 0;
    for (const std::uint8_t c : cover_) n += c;
    return n;
}

long Region::optional_cell_count() const {
    return static_cast<long>(cover_.size()) - interest_cell_count();
}

long Region::placeable_interest_count() const {
    long n = 0;
    for (std::size_t i = 0; i < cover_.size(); ++i)
        if (cover_[i] && place_[i]) ++n;
    return n;
}

std::vector<Cell> Region::placeable_interest_cells() const {
    std::vector<Cell> cells;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (cover_[idx(x, y)] && place_[idx(x, y)]) cells.push_back({x, y});
    return cells;
}

Region parse_region(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }

    if (lines.empty() || lines[0].empty())
        throw RegionParseError(1, 1, "expected header \"width height\"");

    int width = 0;
    int height = 0;
    {
        std::istringstream header{std::string(lines[0])};
        header >> width >> height;
        std::string trailing;
        if (header.fail() || (header >> trailing))
            throw RegionParseError(1, 1, "expected header \"width height\"");
        if (width < 1 || height < 1)
            throw RegionParseError(1, 1, "width and height must be positive");
    }

    Region region(width, height);
    for (int y = 0; y < height; ++y) {
        const int line_no = y + 2;
        if (static_cast<std::size_t>(y) + 1 >= lines.size())
            throw RegionParseError(line_no, 1, "expected " + std::to_string(height) + " rows, found " + std::to_string(y));
        const std::string_view row = lines[static_cast<std::size_t>(y) + 1];
        if (row.size() != static_cast<std::size_t>(width)) {
            const int column = static_cast<int>(std::min(row.size(), static_cast<std::size_t>(width))) + 1;
            throw RegionParseError(line_no, column,
                                   "row has " + std::to_string(row.size()) + " cells, expected " + std::to_string(width));
        }
        for (int x = 0; x < width; ++x) {
            switch (row[static_cast<std::size_t>(x)]) {
                case 'I': region.set_cover(x, y, true); region.set_place(x, y, true); break;
                case 'i': region.set_cover(x, y, true); region.set_place(x, y, false); break;
                case 'o': region.set_cover(x, y, false); region.set_place(x, y, true); break;
                case 'x': region.set_cover(x, y, false); region.set_place(x, y, false); break;
                default:
                    throw RegionParseError(line_no, x + 1,
                                           std::string("unknown cell character '") + row[static_cast<std::size_t>(x)] + "'");
            }
        }
    }
    for (std::size_t i = static_cast<std::size_t>(height) + 1; i < lines.size(); ++i) {
        if (!lines[i].empty())
            throw RegionParseError(static_cast<int>(i) + 1, 1, "unexpected content after last row");
    }
    return region;
}

std::string serialize_region(const Region& region) {
    std::string out = std::to_string(region.width()) + " " + std::to_string(region.height());
    out.reserve(out.size() + static_cast<std::size_t>(region.height()) * (static_cast<std::size_t>(region.width()) + 1));
    for (int y = 0; y < region.height(); ++y) {
        out += '\n';
        for (int x = 0; x < region.width(); ++x) {
            const bool c = region.cover(x, y);
            const bool p = region.place(x, y);
            out += c ? (p ? 'I' : 'i') : (p ? 'o' : 'x');
        }
    }
    return out;
}

Region generate_region(const RegionGenParams& params) {
    if (params.width < 1 || params.height < 1)
        throw std::invalid_argument("generator grid dimensions must be positive");
    if (params.interest_blob_count < 0 || params.prohibited_blob_count < 0)
        throw std::invalid_argument("blob counts must be non-negative");
    if (params.interest_radius_min < 1 || params.interest_radius_min > params.interest_radius_max)
        throw std::invalid_argument("interest blob radius range must satisfy 0 < min <= max");
    if (params.prohibited_radius_min < 1 || params.prohibited_radius_min > params.prohibited_radius_max)
        throw std::invalid_argument("prohibited blob radius range must satisfy 0 < min <= max");

    Region region(params.width, params.height);
    Rng rng(params.seed);

    const auto paint = [&region](int cx, int cy, int rad, bool cover, bool place) {
        const int r2 = rad * rad;
        for (int dy = -(rad - 1); dy <= rad - 1; ++dy) {
            const int y = cy + dy;
            if (y < 0 || y >= region.height()) continue;
            for (int dx = -(rad - 1); dx <= rad - 1; ++dx) {
                const int x = cx + dx;
                if (x < 0 || x >= region.width()) continue;
                if (dx * dx + dy * dy < r2) {
                    region.set_cover(x, y, cover);
                    region.set_place(x, y, place);
                }
            }
        }
    };

    for (int i = 0; i < params.interest_blob_count; ++i) {
        const int cx = static_cast<int>(rng.next_index(static_cast<std::size_t>(params.width)));
        const int cy = static_cast<int>(rng.next_index(static_cast<std::size_t>(params.height)));
        const int rad = rng.next_int(params.interest_radius_min, params.interest_radius_max);
        paint(cx, cy, rad, true, true);
    }
    for (int i = 0; i < params.prohibited_blob_count; ++i) {
        const int cx = static_cast<int>(rng.next_index(static_cast<std::size_t>(params.width)));
        const int cy = static_cast<int>(rng.next_index(static_cast<std::size_t>(params.height)));
        const int rad = rng.next_int(params.prohibited_radius_min, params.prohibited_radius_max);
        paint(cx, cy, rad, false, false);
    }

    if (region.placeable_interest_count() == 0)
        throw std::runtime_error("generated region has no placeable interest cell (seed " +
                                 std::to_string(params.seed) + ")");
    return region;
}

Region load_region_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open region file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_region(buf.str());
}

void save_region_file(const Region& region, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write region file: " + path);
    out << serialize_region(region);
    if (!out) throw std::runtime_error("failed writing region file: " + path);
}

}  // namespace meshplace
