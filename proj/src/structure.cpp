#include "protpref/structure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "protpref/amino.hpp"
#include "protpref/error.hpp"

namespace protpref {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Columns are 1-based and inclusive, as in the PDB format description.
std::string_view columns(std::string_view line, std::size_t from, std::size_t to) {
  if (line.size() < from) return {};
  return line.substr(from - 1, std::min(to, line.size()) - from + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::MalformedRecord, "line " + std::to_string(line_no) + ": " + what);
}

AtomRecord parse_atom_line(std::string_view line, std::size_t line_no) {
  if (line.size() < 54) malformed(line_no, "ATOM record shorter than 54 columns");
  AtomRecord atom;
  atom.atom_name = std::string(trim(columns(line, 13, 16)));
  atom.residue_name = std::string(trim(columns(line, 18, 20)));
  atom.chain_id = line[21];
  if (atom.atom_name.empty()) malformed(line_no, "blank atom name");
  if (!parse_number(columns(line, 23, 26), atom.residue_seq))
    malformed(line_no, "bad residue sequence number");
  if (!parse_number(columns(line, 31, 38), atom.position.x) ||
      !parse_number(columns(line, 39, 46), atom.position.y) ||
      !parse_number(columns(line, 47, 54), atom.position.z))
    malformed(line_no, "bad coordinates");
  if (!std::isfinite(atom.position.x) || !std::isfinite(atom.position.y) ||
      !std::isfinite(atom.position.z))
    malformed(line_no, "non-finite coordinates");
  return atom;
}

}  // namespace

double euclidean(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

const AtomRecord* Residue::find_atom(std::string_view name) const {
  for (const auto& atom : atoms)
    if (atom.atom_name == name) return &atom;
  return nullptr;
}

Vec3 Residue::centroid() const {
  Vec3 c;
  for (const auto& atom : atoms) {
    c.x += atom.position.x;
    c.y += atom.position.y;
    c.z += atom.position.z;
  }
  const auto count = static_cast<double>(atoms.size());
  return {c.x / count, c.y / count, c.z / count};
}

std::size_t ProteinStructure::residue_count() const {
  std::size_t total = 0;
  for (const auto& chain : chains) total += chain.residues.size();
  return total;
}

ProteinStructure parse_pdb(std::istream& in, std::string id, ParseWarnings* warnings) {
  if (id.empty()) throw Error(ErrorKind::BadConfig, "structure id must be non-empty");
  ParseWarnings local;
  ParseWarnings& warn = warnings ? *warnings : local;
  warn = {};

  ProteinStructure structure{std::move(id), {}};
  std::map<char, std::size_t> chain_slot;
  std::set<std::pair<char, int>> seen_residues;
  // Residue currently receiving atoms: (chain, resSeq, iCode, resName).
  std::optional<std::tuple<char, int, char, std::string>> current;
  bool current_skipped = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view(line);
    const auto record = columns(view, 1, 6);
    if (record.starts_with("ENDMDL")) break;
    if (record.starts_with("HETATM")) {
      ++warn.hetatm_records;
      continue;
    }
    if (record != "ATOM  " && record != "ATOM") continue;

    AtomRecord atom = parse_atom_line(view, line_no);
    const char alt_loc = view[16];
    if (alt_loc != ' ' && alt_loc != 'A') {
      ++warn.alt_loc_atoms;
      continue;
    }
    const auto letter = one_letter_from_three(atom.residue_name);
    if (!letter) {
      ++warn.nonstandard_residue_atoms;
      continue;
    }

    const char insertion = view[26];
    auto key = std::make_tuple(atom.chain_id, atom.residue_seq, insertion, atom.residue_name);
    if (!current || *current != key) {
      current = key;
      current_skipped = !seen_residues.insert({atom.chain_id, atom.residue_seq}).second;
      if (!current_skipped) {
        auto [it, inserted] = chain_slot.try_emplace(atom.chain_id, structure.chains.size());
        if (inserted) structure.chains.push_back(Chain{atom.chain_id, {}});
        structure.chains[it->second].residues.push_back(
            Residue{*letter, atom.residue_seq, atom.chain_id, {}});
      }
    }
    if (current_skipped) {
      ++warn.duplicate_residue_atoms;
      continue;
    }
    structure.chains[chain_slot.at(atom.chain_id)].residues.back().atoms.push_back(std::move(atom));
  }

  for (auto& chain : structure.chains)
    std::stable_sort(chain.residues.begin(), chain.residues.end(),
                     [](const Residue& a, const Residue& b) { return a.seq_index < b.seq_index; });
  if (structure.residue_count() == 0)
    throw Error(ErrorKind::EmptyStructure, "no standard amino-acid residues in " + structure.id);
  return structure;
}

ProteinStructure parse_pdb_text(std::string_view text, std::string id, ParseWarnings* warnings) {
  std::istringstream in{std::string(text)};
  return parse_pdb(in, std::move(id), warnings);
}

ProteinStructure read_pdb_file(const std::filesystem::path& path, ParseWarnings* warnings) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_pdb(in, path.stem().string(), warnings);
}

std::string_view to_string(DistanceMode mode) {
  switch (mode) {
    case DistanceMode::c_alpha: return "c_alpha";
    case DistanceMode::centroid: return "centroid";
    case DistanceMode::heavy_min: return "heavy_min";
  }
  return "c_alpha";
}

DistanceMode distance_mode_from_string(std::string_view name) {
  if (name == "c_alpha" || name == "ca") return DistanceMode::c_alpha;
  if (name == "centroid") return DistanceMode::centroid;
  if (name == "heavy_min" || name == "heavy") return DistanceMode::heavy_min;
  throw Error(ErrorKind::BadConfig, "unknown distance mode '" + std::string(name) + "'");
}

double residue_distance(const Residue& a, const Residue& b, DistanceMode mode) {
  switch (mode) {
    case DistanceMode::c_alpha: {
      const auto* ca_a = a.find_atom("CA");
      const auto* ca_b = b.find_atom("CA");
      if (!ca_a || !ca_b) {
        const Residue& missing = ca_a ? b : a;
        throw Error(ErrorKind::MissingAtom, "no CA atom in residue " +
                                                std::string(1, missing.chain_id) + ":" +
                                                std::to_string(missing.seq_index));
      }
      return euclidean(ca_a->position, ca_b->position);
    }
    case DistanceMode::centroid:
      return euclidean(a.centroid(), b.centroid());
    case DistanceMode::heavy_min: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& x : a.atoms)
        for (const auto& y : b.atoms) best = std::min(best, euclidean(x.position, y.position));
      return best;
    }
  }
  return 0.0;
}

}  // namespace protpref
