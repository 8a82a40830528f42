#pragma once

/** \file moldb.hpp
 *
 *  \brief Diatomic molecule records and the threshold c_h,min = e^{-b_h r_e}.
 *
 *  File format: UTF-8 text, one record per blank-line separated block,
 *  `key = value` lines with keys name, b_h, r_e and optional D (eV),
 *  mu (amu), c_h. `#` starts a comment. Numbers accept `.` or `,` as the
 *  decimal mark and spaces (including thin spaces) as digit grouping.
 */

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tietz {

struct MoleculeRecord
{
    std::string name;
    double b_h{0.0}; ///< inverse Angstrom
    double r_e{0.0}; ///< Angstrom
    std::optional<double> D;   ///< eV
    std::optional<double> mu;  ///< amu
    std::optional<double> c_h; ///< requested deformation
    double c_h_min{0.0};       ///< e^{-b_h r_e}

    /// Fills c_h_min and checks the invariants; throws DomainError.
    void finalize();
};

/// The eleven reference molecules. D and mu are not known for them and stay empty.
std::vector<MoleculeRecord> const& builtin_molecules();

/// Throws ParseError carrying the 1-based line number, DomainError on invalid values.
std::vector<MoleculeRecord> load_molecules(std::filesystem::path const& path);
std::vector<MoleculeRecord> parse_molecules(std::string_view text);

/// Parses "0,047 071 975" style numbers. Returns nullopt when malformed.
std::optional<double> parse_number(std::string_view text);

/// Matches the full name or the part before '(', case-sensitively.
std::optional<MoleculeRecord> find_molecule(std::vector<MoleculeRecord> const& records, std::string_view name);

/// Builtins followed by the records of $TIETZ_SPECTRA_DATA, when that variable is set.
std::vector<MoleculeRecord> default_molecules();

} // namespace tietz
