#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace protpref {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double euclidean(const Vec3& a, const Vec3& b);

struct AtomRecord {
  std::string atom_name;     // trimmed, e.g. "CA"
  std::string residue_name;  // three-letter code, e.g. "ALA"
  char chain_id = ' ';
  int residue_seq = 0;
  Vec3 position;

  friend bool operator==(const AtomRecord&, const AtomRecord&) = default;
};

struct Residue {
  char one_letter_code = 'X';
  int seq_index = 0;
  char chain_id = ' ';
  std::vector<AtomRecord> atoms;

  const AtomRecord* find_atom(std::string_view name) const;
  Vec3 centroid() const;

  friend bool operator==(const Residue&, const Residue&) = default;
};

struct Chain {
  char id = ' ';
  std::vector<Residue> residues;  // strictly increasing seq_index

  friend bool operator==(const Chain&, const Chain&) = default;
};

struct ProteinStructure {
  std::string id;
  std::vector<Chain> chains;

  std::size_t residue_count() const;

  friend bool operator==(const ProteinStructure&, const ProteinStructure&) = default;
};

/// Counts of records dropped while parsing.
struct ParseWarnings {
  std::size_t nonstandard_residue_atoms = 0;
  std::size_t alt_loc_atoms = 0;
  std::size_t duplicate_residue_atoms = 0;
  std::size_t hetatm_records = 0;

  std::size_t total() const {
    return nonstandard_residue_atoms + alt_loc_atoms + duplicate_residue_atoms + hetatm_records;
  }
};

/// Parses fixed-column PDB text. Only ATOM records of the first model are
/// read; altLoc must be blank or 'A'; residues outside the 20 standard
/// amino acids are skipped. Insertion codes are ignored and a repeated
/// (chain, resSeq) keeps its first residue.
///
/// Throws Error{MalformedRecord} on an ATOM line whose columns do not parse,
/// Error{EmptyStructure} when no standard residue survives.
ProteinStructure parse_pdb(std::istream& in, std::string id, ParseWarnings* warnings = nullptr);
ProteinStructure parse_pdb_text(std::string_view text, std::string id,
                                ParseWarnings* warnings = nullptr);
ProteinStructure read_pdb_file(const std::filesystem::path& path,
                               ParseWarnings* warnings = nullptr);

enum class DistanceMode { c_alpha, centroid, heavy_min };

std::string_view to_string(DistanceMode mode);
DistanceMode distance_mode_from_string(std::string_view name);

/// Residue-residue distance in Angstrom. c_alpha needs a CA atom in both
/// residues (Error{MissingAtom} otherwise).
double residue_distance(const Residue& a, const Residue& b, DistanceMode mode);

}  // namespace protpref
