#pragma once

// Text formats: JSON for matrices, partitions, distributions and occupations;
// CSV for character tables and thermometry curves; parsers for the compact
// command-line forms ("3,1,1", "1-4,7", "0.5,0.5").
//
// Mode indices are 0-based in the library and 1-based in every text format.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genbunch/bunching.hpp"
#include "genbunch/errors.hpp"
#include "genbunch/fock_oracle.hpp"
#include "genbunch/linalg.hpp"
#include "genbunch/occupation.hpp"
#include "genbunch/partitions.hpp"
#include "genbunch/symfunc.hpp"
#include "genbunch/symgroup.hpp"
#include "genbunch/thermometry.hpp"

namespace genbunch::io {

using json = nlohmann::json;

inline std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline int parse_int(std::string_view s, const std::string& what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    genbunch::detail::require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
                              "malformed " + what + ": '" + std::string(s) + "' is not an integer");
    return v;
}

inline double parse_double(std::string_view s, const std::string& what)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    genbunch::detail::require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty() && std::isfinite(v),
                              "malformed " + what + ": '" + std::string(s) + "' is not a finite number");
    return v;
}

} // namespace detail

/// "3,1,1" -> (3,1,1). Parts must be positive and nonincreasing.
inline Partition parse_partition(std::string_view text)
{
    std::vector<int> parts;
    for (std::string_view tok : detail::split(detail::trim(text), ',')) {
        const int p = detail::parse_int(tok, "partition");
        genbunch::detail::require(p > 0, "malformed partition '" + std::string(text) + "': parts must be positive");
        parts.push_back(p);
    }
    try {
        return Partition(std::move(parts));
    } catch (const validation_error& e) {
        throw validation_error("malformed partition '" + std::string(text) + "': " + e.what());
    }
}

/// "1,3" -> 0-based {0, 2}; order is kept.
inline std::vector<int> parse_sites(std::string_view text, int m)
{
    std::vector<int> sites;
    for (std::string_view tok : detail::split(detail::trim(text), ',')) sites.push_back(detail::parse_int(tok, "site list") - 1);
    check_sites(sites, m);
    return sites;
}

/// "1-4,7" or "all" -> 0-based mode subset of [m]. An empty string is the empty set.
inline ModeSubset parse_subset(std::string_view text, int m)
{
    text = detail::trim(text);
    if (text == "all") return ModeSubset::all(m);
    std::vector<int> idx;
    if (!text.empty()) {
        for (std::string_view tok : detail::split(text, ',')) {
            const std::size_t dash = tok.find('-');
            if (dash == std::string_view::npos) {
                idx.push_back(detail::parse_int(tok, "subset") - 1);
            } else {
                const int lo = detail::parse_int(detail::trim(tok.substr(0, dash)), "subset range");
                const int hi = detail::parse_int(detail::trim(tok.substr(dash + 1)), "subset range");
                genbunch::detail::require(lo <= hi, "malformed subset range '" + std::string(tok) + "'");
                for (int s = lo; s <= hi; ++s) idx.push_back(s - 1);
            }
        }
    }
    ModeSubset subset(idx);
    genbunch::detail::require(subset.empty() || subset.indices().front() >= 0, "subset indices start at 1");
    subset.check_range(m);
    return subset;
}

/// "0.5,0.5" -> probability vector. Without `normalize` the entries must
/// already sum to 1.
inline ProbVector parse_prob_vector(std::string_view text, bool normalize)
{
    ProbVector alpha;
    for (std::string_view tok : detail::split(detail::trim(text), ',')) alpha.push_back(detail::parse_double(tok, "probability vector"));
    if (normalize) {
        double total = 0.0;
        for (double a : alpha) {
            genbunch::detail::require(a >= 0.0, "probability vector entries must be nonnegative");
            total += a;
        }
        genbunch::detail::require(total > 0.0, "probability vector must have positive total");
        for (double& a : alpha) a /= total;
    }
    validate_prob_vector(alpha);
    return alpha;
}

inline std::vector<double> parse_double_list(std::string_view text, const std::string& what)
{
    std::vector<double> out;
    for (std::string_view tok : detail::split(detail::trim(text), ',')) out.push_back(detail::parse_double(tok, what));
    return out;
}

inline json to_json(const Partition& p) { return json(p.parts()); }

inline Partition partition_from_json(const json& j)
{
    genbunch::detail::require(j.is_array(), "partition must be a JSON array");
    std::vector<int> parts;
    for (const auto& e : j) {
        genbunch::detail::require(e.is_number_integer(), "partition entries must be integers");
        parts.push_back(e.get<int>());
    }
    return Partition(std::move(parts));
}

/// {"[2,1]": 0.5, ...}
inline json to_json(const IrrepDistribution& d)
{
    json out = json::object();
    for (const auto& [lambda, p] : d.q) out[to_json(lambda).dump()] = p;
    return out;
}

inline IrrepDistribution irrep_distribution_from_json(const json& j)
{
    genbunch::detail::require(j.is_object(), "irrep distribution must be a JSON object");
    IrrepDistribution d;
    d.n = -1;
    for (const auto& [key, value] : j.items()) {
        json parsed;
        try {
            parsed = json::parse(key);
        } catch (const json::exception&) {
            throw validation_error("irrep distribution key '" + key + "' is not a partition array");
        }
        const Partition lambda = partition_from_json(parsed);
        genbunch::detail::require(value.is_number(), "irrep distribution values must be numbers");
        if (d.n < 0) d.n = lambda.size();
        genbunch::detail::require(lambda.size() == d.n, "irrep distribution mixes partitions of different sizes");
        d.q[lambda] = value.get<double>();
    }
    genbunch::detail::require(d.n > 0, "irrep distribution is empty");
    d.validate();
    return d;
}

/// {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}
inline json to_json(const ComplexMatrix& a)
{
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        json rr = json::array(), ri = json::array();
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            rr.push_back(a(i, k).real());
            ri.push_back(a(i, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const json& j)
{
    genbunch::detail::require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("re"),
                              "matrix JSON needs rows, cols and re");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    genbunch::detail::require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
    const json& re = j.at("re");
    const json im = j.contains("im") ? j.at("im") : json();
    genbunch::detail::require(re.is_array() && static_cast<int>(re.size()) == rows, "matrix re has the wrong row count");
    ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        genbunch::detail::require(re[static_cast<std::size_t>(i)].is_array() && static_cast<int>(re[static_cast<std::size_t>(i)].size()) == cols,
                                  "matrix re has the wrong column count");
        for (int k = 0; k < cols; ++k) {
            double r = re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
            double c = im.is_null() ? 0.0 : im.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
            genbunch::detail::require(std::isfinite(r) && std::isfinite(c), "matrix entries must be finite");
            a(i, k) = complex(r, c);
        }
    }
    return a;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    genbunch::detail::require(static_cast<bool>(in), "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw validation_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// {"1": 2, "3": 1}: occupied modes only, 1-based.
inline json to_json(const Occupation& v)
{
    json out = json::object();
    for (int s = 0; s < v.modes(); ++s)
        if (v.counts[static_cast<std::size_t>(s)] > 0) out[std::to_string(s + 1)] = v.counts[static_cast<std::size_t>(s)];
    return out;
}

inline Occupation occupation_from_json(const json& j, int m)
{
    genbunch::detail::require(j.is_object(), "occupation must be a JSON object");
    Occupation v{std::vector<int>(static_cast<std::size_t>(m), 0)};
    for (const auto& [key, value] : j.items()) {
        const int mode = detail::parse_int(key, "occupation mode") - 1;
        genbunch::detail::require(mode >= 0 && mode < m, "occupation mode out of range");
        genbunch::detail::require(value.is_number_integer() && value.get<int>() >= 0, "occupation counts must be nonnegative integers");
        v.counts[static_cast<std::size_t>(mode)] = value.get<int>();
    }
    return v;
}

inline json to_json(const VisibleDistribution& dist)
{
    json out = json::array();
    for (const auto& e : dist) out.push_back({{"occupation", to_json(e.v)}, {"probability", e.p}});
    return out;
}

/// Header row: "irrep" then one quoted cycle type per column.
inline std::string character_table_csv(const CharacterTable& t)
{
    std::ostringstream out;
    out << "irrep";
    for (const Partition& ct : t.classes) out << ",\"" << ct.str() << '"';
    out << "\nclass_size";
    for (std::uint64_t s : t.class_sizes) out << ',' << s;
    out << '\n';
    for (std::size_t r = 0; r < t.irreps.size(); ++r) {
        out << '"' << t.irreps[r].str() << '"';
        for (std::int64_t v : t.values[r]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

inline std::string thermo_curve_csv(const ThermoCurve& c)
{
    std::ostringstream out;
    out << "beta,mean_bunching\n";
    for (std::size_t i = 0; i < c.betas.size(); ++i) out << format_double(c.betas[i]) << ',' << format_double(c.values[i]) << '\n';
    return out.str();
}

} // namespace genbunch::io
