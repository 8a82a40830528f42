#include "tietz/moldb.hpp"

#include "tietz/errors.hpp"

#include <fmt/core.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tietz {

void MoleculeRecord::finalize()
{
    if (name.empty()) {
        throw DomainError("molecule record without a name");
    }
    if (!(b_h > 0.0) || !(r_e > 0.0)) {
        throw DomainError(fmt::format("{}: b_h and r_e must be > 0", name));
    }
    if (D && !(*D > 0.0)) {
        throw DomainError(fmt::format("{}: D must be > 0", name));
    }
    if (mu && !(*mu > 0.0)) {
        throw DomainError(fmt::format("{}: mu must be > 0", name));
    }
    if (c_h && !(std::abs(*c_h) < 1.0)) {
        throw DomainError(fmt::format("{}: |c_h| must be < 1", name));
    }
    c_h_min = std::exp(-b_h * r_e);
}

std::vector<MoleculeRecord> const& builtin_molecules()
{
    static std::vector<MoleculeRecord> const table = [] {
        struct Row
        {
            char const* name;
            double b_h;
            double r_e;
        };
        Row const rows[] = {
            {"HF(X1Sigma+)", 1.94207, 0.917},    {"Cl2(X1Sigma_g+)", 2.200354, 1.987},
            {"I2(X(O_g+))", 2.12343, 2.666},     {"H2(X1Sigma_g+)", 1.61890, 0.741},
            {"O2(X3Sigma_g+)", 2.59103, 1.207},  {"N2(X1Sigma_g+)", 2.78585, 1.097},
            {"CO(X1Sigma+)", 2.20481, 1.128},    {"NO(X2Pi_r)", 2.71559, 1.151},
            {"O2+(X2Pi_g+)", 2.86987, 1.116},    {"NO+(X1Sigma+)", 2.73349, 1.063},
            {"N2+(X2Sigma_g+)", 2.70830, 1.116},
        };
        std::vector<MoleculeRecord> out;
        for (Row const& row : rows) {
            MoleculeRecord m;
            m.name = row.name;
            m.b_h = row.b_h;
            m.r_e = row.r_e;
            m.finalize();
            out.push_back(std::move(m));
        }
        return out;
    }();
    return table;
}

namespace {

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

std::optional<double> parse_number(std::string_view text)
{
    std::string digits;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char const ch = text[i];
        if (ch == ' ' || ch == '\t') {
            continue;
        }
        // U+00A0, U+2009 and U+202F as group separators.
        if (text.substr(i, 2) == "\xC2\xA0") {
            ++i;
            continue;
        }
        if (text.substr(i, 3) == "\xE2\x80\x89" || text.substr(i, 3) == "\xE2\x80\xAF") {
            i += 2;
            continue;
        }
        digits += ch;
    }
    auto const comma = digits.find(',');
    if (comma != std::string::npos) {
        if (digits.find('.') != std::string::npos || digits.find(',', comma + 1) != std::string::npos) {
            return std::nullopt;
        }
        digits[comma] = '.';
    }
    if (digits.empty()) {
        return std::nullopt;
    }
    char const* begin = digits.data();
    if (*begin == '+') {
        ++begin;
    }
    double value = 0.0;
    auto const [end, ec] = std::from_chars(begin, digits.data() + digits.size(), value);
    if (ec != std::errc{} || end != digits.data() + digits.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::vector<MoleculeRecord> parse_molecules(std::string_view text)
{
    std::vector<MoleculeRecord> out;
    MoleculeRecord current;
    int record_line = 0;
    bool has_b = false;
    bool has_r = false;

    auto flush = [&](int line) {
        if (record_line == 0) {
            return;
        }
        if (current.name.empty()) {
            throw ParseError("record is missing field 'name'", record_line);
        }
        if (!has_b) {
            throw ParseError(fmt::format("record '{}' is missing field 'b_h'", current.name), record_line);
        }
        if (!has_r) {
            throw ParseError(fmt::format("record '{}' is missing field 'r_e'", current.name), record_line);
        }
        try {
            current.finalize();
        }
        catch (DomainError const& e) {
            throw ParseError(e.what(), line);
        }
        out.push_back(std::move(current));
        current = MoleculeRecord{};
        record_line = 0;
        has_b = has_r = false;
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") {
            line.remove_prefix(3);
        }
        if (auto const hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            flush(line_no - 1);
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(fmt::format("expected 'key = value', got '{}'", line), line_no);
        }
        std::string_view const key = trim(line.substr(0, eq));
        std::string_view const value = trim(line.substr(eq + 1));
        if (record_line == 0) {
            record_line = line_no;
        }
        if (key == "name") {
            if (value.empty()) {
                throw ParseError("empty name", line_no);
            }
            current.name = std::string(value);
            continue;
        }
        auto const number = parse_number(value);
        if (key != "b_h" && key != "r_e" && key != "D" && key != "mu" && key != "c_h") {
            throw ParseError(fmt::format("unknown field '{}'", key), line_no);
        }
        if (!number) {
            throw ParseError(fmt::format("field '{}': malformed number '{}'", key, value), line_no);
        }
        if (key == "b_h") {
            current.b_h = *number;
            has_b = true;
        }
        else if (key == "r_e") {
            current.r_e = *number;
            has_r = true;
        }
        else if (key == "D") {
            current.D = *number;
        }
        else if (key == "mu") {
            current.mu = *number;
        }
        else {
            current.c_h = *number;
        }
    }
    flush(line_no);
    return out;
}

std::vector<MoleculeRecord> load_molecules(std::filesystem::path const& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw Error(fmt::format("cannot open molecule file '{}'", path.string()));
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_molecules(buffer.str());
}

std::optional<MoleculeRecord> find_molecule(std::vector<MoleculeRecord> const& records, std::string_view name)
{
    for (auto const& m : records) {
        std::string_view const full = m.name;
        if (full == name || full.substr(0, full.find('(')) == name) {
            return m;
        }
    }
    return std::nullopt;
}

std::vector<MoleculeRecord> default_molecules()
{
    std::vector<MoleculeRecord> out = builtin_molecules();
    if (char const* env = std::getenv("TIETZ_SPECTRA_DATA"); env != nullptr && *env != '\0') {
        auto extra = load_molecules(env);
        out.insert(out.end(), extra.begin(), extra.end());
    }
    return out;
}

} // namespace tietz
