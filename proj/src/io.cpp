#include "mmaf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mmaf/error.hpp"

namespace mmaf::io {

std::string config_hash(const json& j)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::io_error, "cannot open " + path.string() + " for writing");
    out << text;
    require(static_cast<bool>(out), ErrorKind::io_error, "failed writing " + path.string());
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::missing_input, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json(const fs::path& path, const json& j)
{
    write_text(path, j.dump(2) + "\n");
}

json read_json(const fs::path& path)
{
    const std::string text = read_text(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::config_parse, path.string() + ": " + e.what());
    }
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    // Shortest representation that parses back to the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string provenance_fields(const Provenance& prov)
{
    return "config_hash=" + prov.config_hash + " rng_seed=" + std::to_string(prov.rng_seed);
}

double parse_double(std::string_view s, const std::string& where)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) {
        if (s == "nan")
            return std::nan("");
        throw Error(ErrorKind::config_parse, where + ": cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

json cube_sidecar(const RasterCube& cube, const Provenance& prov)
{
    return {{"n_t", cube.n_t}, {"n_x", cube.n_x}, {"h_t", cube.h_t}, {"h_s", cube.h_s},
            {"t0", cube.t0},   {"x0", cube.x0},   {"config_hash", prov.config_hash}, {"rng_seed", prov.rng_seed}};
}

void write_cube_csv(const fs::path& path, const RasterCube& cube, const Provenance& prov)
{
    std::string s;
    s.reserve(cube.size() * 24 + 256);
    s += "# cube n_t=" + std::to_string(cube.n_t) + " n_x=" + std::to_string(cube.n_x)
         + " h_t=" + format_double(cube.h_t) + " h_s=" + format_double(cube.h_s) + " t0=" + format_double(cube.t0)
         + " x0=" + format_double(cube.x0) + " " + provenance_fields(prov) + "\n";
    s += "# time_index";
    for (int j = 0; j < cube.n_x; ++j)
        s += ",p" + std::to_string(j);
    s += "\n";
    for (int i = 0; i < cube.n_t; ++i) {
        s += std::to_string(i);
        for (int j = 0; j < cube.n_x; ++j) {
            s += ',';
            s += format_double(cube.at(i, j));
        }
        s += '\n';
    }
    write_text(path, s);
}

RasterCube read_cube_csv(const fs::path& path)
{
    const std::string text = read_text(path);
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> meta;
    std::vector<std::vector<double>> rows;
    const std::string where = path.string();
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (line.rfind("# cube ", 0) == 0) {
                std::istringstream kv(line.substr(7));
                std::string tok;
                while (kv >> tok) {
                    const auto eq = tok.find('=');
                    if (eq != std::string::npos)
                        meta[tok.substr(0, eq)] = tok.substr(eq + 1);
                }
            }
            continue;
        }
        const auto cells = split_commas(line);
        require(cells.size() >= 2, ErrorKind::config_parse, where + ": cube row without pixel values");
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t k = 1; k < cells.size(); ++k)
            row.push_back(parse_double(cells[k], where));
        rows.push_back(std::move(row));
    }
    for (const char* key : {"h_t", "h_s", "t0", "x0"})
        require(meta.count(key) > 0, ErrorKind::config_parse, where + ": cube header lacks " + key);
    require(!rows.empty(), ErrorKind::config_parse, where + ": cube has no rows");
    const int n_x = static_cast<int>(rows.front().size());
    RasterCube cube(static_cast<int>(rows.size()), n_x, parse_double(meta["h_t"], where),
                    parse_double(meta["h_s"], where), parse_double(meta["t0"], where), parse_double(meta["x0"], where));
    for (int i = 0; i < cube.n_t; ++i) {
        require(static_cast<int>(rows[i].size()) == n_x, ErrorKind::config_parse,
                where + ": ragged cube row " + std::to_string(i));
        std::copy(rows[i].begin(), rows[i].end(), cube.values.begin() + static_cast<std::ptrdiff_t>(i) * n_x);
    }
    return cube;
}

void write_training_set_csv(const fs::path& path, const TrainingSet& ts, const Provenance& prov)
{
    std::string s = "# training_set m=" + std::to_string(ts.m) + " a_pc=" + std::to_string(ts.a_pc) + " "
                    + provenance_fields(prov) + "\n# target_row";
    for (int k = 0; k < ts.a_pc; ++k)
        s += ",x" + std::to_string(k);
    s += ",y\n";
    for (int i = 0; i < ts.m; ++i) {
        s += std::to_string(ts.target_rows[i]);
        for (double v : ts.x(i))
            s += "," + format_double(v);
        s += "," + format_double(ts.outputs[i]) + "\n";
    }
    write_text(path, s);
}

void write_forecast_csv(const fs::path& path, const std::vector<ForecastRow>& rows, const Provenance& prov)
{
    std::string s = "# forecast " + provenance_fields(prov) + "\n# pixel,min,q25,q50,q75,max,truth\n";
    for (const auto& r : rows) {
        const auto& f = r.forecast;
        s += std::to_string(r.pixel);
        for (double v : {f.min, f.q25, f.q50, f.q75, f.max, r.truth})
            s += "," + format_double(v);
        s += "\n";
    }
    write_text(path, s);
}

std::string forecast_svg(const std::vector<ForecastRow>& rows, const std::string& title)
{
    const double W = 900, H = 420, L = 60, R = 20, T = 40, B = 40;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& r : rows) {
        lo = std::min({lo, r.forecast.min, std::isnan(r.truth) ? lo : r.truth});
        hi = std::max({hi, r.forecast.max, std::isnan(r.truth) ? hi : r.truth});
    }
    if (rows.empty() || !(hi > lo)) {
        lo = -1.0;
        hi = 1.0;
    }
    const double p0 = rows.empty() ? 0 : rows.front().pixel;
    const double p1 = rows.empty() ? 1 : std::max<double>(rows.back().pixel, p0 + 1);
    auto X = [&](double p) { return L + (p - p0) / (p1 - p0) * (W - L - R); };
    auto Y = [&](double v) { return T + (hi - v) / (hi - lo) * (H - T - B); };
    auto band = [&](auto lower, auto upper, const char* fill) {
        std::string pts;
        for (const auto& r : rows)
            pts += format_double(X(r.pixel)) + "," + format_double(Y(upper(r))) + " ";
        for (auto it = rows.rbegin(); it != rows.rend(); ++it)
            pts += format_double(X(it->pixel)) + "," + format_double(Y(lower(*it))) + " ";
        return "<polygon points=\"" + pts + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
    };
    auto line = [&](auto value, const char* stroke) {
        std::string pts;
        for (const auto& r : rows)
            if (!std::isnan(value(r)))
                pts += format_double(X(r.pixel)) + "," + format_double(Y(value(r))) + " ";
        return "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.2\"/>\n";
    };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << L << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    s << band([](const ForecastRow& r) { return r.forecast.min; }, [](const ForecastRow& r) { return r.forecast.max; },
              "#dbe7f3");
    s << band([](const ForecastRow& r) { return r.forecast.q25; }, [](const ForecastRow& r) { return r.forecast.q75; },
              "#8fb3d9");
    s << line([](const ForecastRow& r) { return r.forecast.q50; }, "#1f4e79");
    s << line([](const ForecastRow& r) { return r.truth; }, "#c0392b");
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << L << "\" y=\"" << H - 12 << "\" font-family=\"sans-serif\" font-size=\"11\">pixel "
      << p0 << "</text>\n"
      << "<text x=\"" << W - R - 60 << "\" y=\"" << H - 12 << "\" font-family=\"sans-serif\" font-size=\"11\">pixel "
      << p1 << "</text>\n"
      << "<text x=\"4\" y=\"" << T + 10 << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(hi)
      << "</text>\n"
      << "<text x=\"4\" y=\"" << H - B << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(lo)
      << "</text>\n"
      << "</svg>\n";
    return s.str();
}

}  // namespace mmaf::io
