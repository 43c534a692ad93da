#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "willmore/profile.hpp"

namespace willmore {

/// CSV with header `s,r,h`. Axis contact is inferred: an end with r == 0
/// is on the axis. Malformed rows raise ParseError with the line number.
ProfileCurve read_profile_csv(std::istream& in);
ProfileCurve read_profile_csv_file(const std::string& path);
void write_profile_csv(std::ostream& out, const ProfileCurve& curve);

/// JSON object {"closed_on_axis": [bool, bool], "metadata": {...},
/// "samples": [[s, r, h], ...]}.
struct ProfileDocument {
    ProfileCurve curve;
    std::map<std::string, std::string> metadata;
};

ProfileDocument read_profile_json(std::istream& in);
void write_profile_json(std::ostream& out, const ProfileCurve& curve,
                        const std::map<std::string, std::string>& metadata = {});

/// Dispatches on the extension (.json, otherwise CSV).
ProfileDocument read_profile_file(const std::string& path);

/// Shortest round-trip text form of a double.
std::string format_double(double v);

}  // namespace willmore
