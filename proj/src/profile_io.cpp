#include "willmore/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "willmore/errors.hpp"

namespace willmore {

namespace {

double parse_field(std::string_view text, std::size_t line, const char* name) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) throw ParseError(std::string("empty field '") + name + "'", line);
    std::istringstream is{std::string(text)};
    is.imbue(std::locale::classic());
    double v;
    is >> v;
    if (is.fail() || !is.eof()) throw ParseError(std::string("cannot parse field '") + name + "': " + std::string(text), line);
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite field '") + name + "'", line);
    return v;
}

ProfileCurve make_curve(std::vector<double> s, std::vector<double> r, std::vector<double> h, AxisContact contact) {
    return ProfileCurve(std::move(s), std::move(r), std::move(h), contact);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ProfileCurve read_profile_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<double> s, r, h;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            std::string compact;
            for (char c : line)
                if (c != ' ') compact += c;
            if (compact != "s,r,h") throw ParseError("expected header 's,r,h'", lineno);
            header = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
            throw ParseError("expected 3 comma-separated fields", lineno);
        std::string_view v(line);
        s.push_back(parse_field(v.substr(0, c1), lineno, "s"));
        r.push_back(parse_field(v.substr(c1 + 1, c2 - c1 - 1), lineno, "r"));
        h.push_back(parse_field(v.substr(c2 + 1), lineno, "h"));
        if (r.back() < 0.0) throw ParseError("negative radius", lineno);
        if (s.size() > 1 && !(s.back() > s[s.size() - 2])) throw ParseError("parameter s not strictly increasing", lineno);
    }
    if (!header) throw ParseError("missing header 's,r,h'", lineno ? 1 : 0);
    if (s.size() < 5) throw ParseError("fewer than 5 samples", lineno);
    const AxisContact contact{r.front() == 0.0, r.back() == 0.0};
    return make_curve(std::move(s), std::move(r), std::move(h), contact);
}

ProfileCurve read_profile_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read_profile_csv(in);
}

void write_profile_csv(std::ostream& out, const ProfileCurve& curve) {
    out << "s,r,h\n";
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << format_double(curve.s()[i]) << ',' << format_double(curve.r()[i]) << ','
            << format_double(curve.h()[i]) << '\n';
}

ProfileDocument read_profile_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 0);
    }
    ProfileDocument doc;
    AxisContact contact;
    try {
        const auto& flags = j.at("closed_on_axis");
        contact = {flags.at(0).get<bool>(), flags.at(1).get<bool>()};
        std::vector<double> s, r, h;
        for (const auto& row : j.at("samples")) {
            if (row.size() != 3) throw ParseError("sample rows must have 3 entries (s, r, h)", 0);
            s.push_back(row[0].get<double>());
            r.push_back(row[1].get<double>());
            h.push_back(row[2].get<double>());
        }
        if (j.contains("metadata"))
            for (const auto& [k, v] : j["metadata"].items()) doc.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
        doc.curve = make_curve(std::move(s), std::move(r), std::move(h), contact);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what(), 0);
    }
    return doc;
}

void write_profile_json(std::ostream& out, const ProfileCurve& curve,
                        const std::map<std::string, std::string>& metadata) {
    out << "{\n  \"closed_on_axis\": [" << (curve.contact().start ? "true" : "false") << ", "
        << (curve.contact().end ? "true" : "false") << "],\n  \"metadata\": {";
    bool first = true;
    for (const auto& [k, v] : metadata) {
        out << (first ? "" : ",") << "\n    " << nlohmann::json(k).dump() << ": " << nlohmann::json(v).dump();
        first = false;
    }
    out << (metadata.empty() ? "" : "\n  ") << "},\n  \"samples\": [";
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << (i ? ",\n    [" : "\n    [") << format_double(curve.s()[i]) << ", " << format_double(curve.r()[i]) << ", "
            << format_double(curve.h()[i]) << ']';
    out << "\n  ]\n}\n";
}

ProfileDocument read_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return read_profile_json(in);
    ProfileDocument doc;
    doc.curve = read_profile_csv(in);
    return doc;
}

}  // namespace willmore
