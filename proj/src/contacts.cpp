#include "protpref/contacts.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "protpref/amino.hpp"
#include "protpref/error.hpp"

namespace protpref {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_double(const std::string& text, double& out) {
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

struct FlatResidue {
  const Residue* residue;
  std::size_t chain_ordinal;
};

std::vector<FlatResidue> flatten(const ProteinStructure& structure) {
  std::vector<FlatResidue> flat;
  for (std::size_t c = 0; c < structure.chains.size(); ++c)
    for (const auto& residue : structure.chains[c].residues) flat.push_back({&residue, c});
  return flat;
}

bool pair_eligible(const FlatResidue& a, const FlatResidue& b, const ContactConfig& config) {
  if (a.chain_ordinal != b.chain_ordinal) return config.cross_chain;
  return std::abs(a.residue->seq_index - b.residue->seq_index) >= config.min_seq_separation;
}

InteractionInstance make_instance(const std::string& protein_id, const Residue& a, const Residue& b,
                                  double distance, const Scorer& scorer) {
  const auto cls = InteractionClass::of(a.one_letter_code, b.one_letter_code);
  return {protein_id, cls, {a.chain_id, a.seq_index}, {b.chain_id, b.seq_index}, distance,
          scorer.score(cls)};
}

void check_inputs(const ProteinStructure& structure, const ContactConfig& config) {
  config.validate();
  if (structure.residue_count() == 0)
    throw Error(ErrorKind::EmptyStructure, "structure " + structure.id + " has no residues");
}

}  // namespace

InteractionClass InteractionClass::of(char a, char b) {
  if (!is_standard_amino(a) || !is_standard_amino(b))
    throw Error(ErrorKind::BadConfig,
                std::string("not a standard amino-acid pair: ") + a + "," + b);
  return a <= b ? InteractionClass(a, b) : InteractionClass(b, a);
}

InteractionClass InteractionClass::from_label(std::string_view label) {
  if (label.size() != 3 || label[1] != '-')
    throw Error(ErrorKind::Schema, "bad interaction class label '" + std::string(label) + "'");
  return of(label[0], label[2]);
}

std::string InteractionClass::label() const { return {first_, '-', second_}; }

std::vector<InteractionClass> class_universe(bool include_homopairs) {
  std::vector<InteractionClass> classes;
  for (std::size_t i = 0; i < kAminoLetters.size(); ++i)
    for (std::size_t j = include_homopairs ? i : i + 1; j < kAminoLetters.size(); ++j)
      classes.push_back(InteractionClass::of(kAminoLetters[i], kAminoLetters[j]));
  return classes;
}

void ContactConfig::validate() const {
  if (!std::isfinite(threshold_tau) || threshold_tau <= 0.0)
    throw Error(ErrorKind::BadConfig, "threshold_tau must be finite and positive");
  if (min_seq_separation < 0)
    throw Error(ErrorKind::BadConfig, "min_seq_separation must be non-negative");
}

Scorer Scorer::from_table(const Table& table, bool negate) {
  for (int a = 0; a < kAminoCount; ++a)
    for (int b = 0; b < kAminoCount; ++b) {
      if (!std::isfinite(table[a][b]))
        throw Error(ErrorKind::BadTable, "non-finite table entry");
      if (std::abs(table[a][b] - table[b][a]) > 1e-9)
        throw Error(ErrorKind::BadTable, std::string("asymmetric entry ") + kAminoLetters[a] +
                                             "," + kAminoLetters[b]);
    }
  return Scorer(Kind::table, table, negate);
}

double Scorer::lookup(char a, char b) const {
  if (kind_ == Kind::unit_count) return 1.0;
  const int i = amino_index(a);
  const int j = amino_index(b);
  if (i < 0 || j < 0) throw Error(ErrorKind::BadTable, "lookup of non-standard letter");
  return table_[i][j];
}

double Scorer::score(const InteractionClass& cls) const {
  if (kind_ == Kind::unit_count) return 1.0;
  const double value = lookup(cls.first(), cls.second());
  return negate_ ? -value : value;
}

Scorer load_score_table(std::istream& csv, bool negate) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(csv, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw Error(ErrorKind::BadTable, "empty table");
  const auto header = split_csv(line);
  if (header.size() != kAminoCount + 1)
    throw Error(ErrorKind::BadTable, "header must list 20 amino-acid letters");
  std::array<int, kAminoCount> column_letter{};
  std::array<bool, kAminoCount> seen_column{};
  for (int c = 0; c < kAminoCount; ++c) {
    const auto& h = header[c + 1];
    const int idx = h.size() == 1 ? amino_index(h[0]) : -1;
    if (idx < 0) throw Error(ErrorKind::BadTable, "unknown letter '" + h + "' in header");
    if (seen_column[idx]) throw Error(ErrorKind::BadTable, "duplicate letter '" + h + "'");
    seen_column[idx] = true;
    column_letter[c] = idx;
  }

  Scorer::Table table{};
  std::array<bool, kAminoCount> seen_row{};
  int rows = 0;
  while (next_line()) {
    const auto fields = split_csv(line);
    if (fields.size() != kAminoCount + 1)
      throw Error(ErrorKind::BadTable, "row " + std::to_string(rows + 1) + " needs 21 fields");
    const int r = fields[0].size() == 1 ? amino_index(fields[0][0]) : -1;
    if (r < 0) throw Error(ErrorKind::BadTable, "unknown row letter '" + fields[0] + "'");
    if (seen_row[r]) throw Error(ErrorKind::BadTable, "duplicate row '" + fields[0] + "'");
    seen_row[r] = true;
    for (int c = 0; c < kAminoCount; ++c) {
      double value = 0.0;
      if (!parse_double(fields[c + 1], value))
        throw Error(ErrorKind::BadTable, "bad number '" + fields[c + 1] + "'");
      table[r][column_letter[c]] = value;
    }
    ++rows;
  }
  if (rows != kAminoCount)
    throw Error(ErrorKind::BadTable, "expected 20 data rows, got " + std::to_string(rows));
  return Scorer::from_table(table, negate);
}

std::vector<InteractionInstance> extract_instances_serial(const ProteinStructure& structure,
                                                          const ContactConfig& config,
                                                          const Scorer& scorer) {
  check_inputs(structure, config);
  const auto flat = flatten(structure);
  std::vector<InteractionInstance> out;
  for (std::size_t i = 0; i < flat.size(); ++i)
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (!pair_eligible(flat[i], flat[j], config)) continue;
      const double d = residue_distance(*flat[i].residue, *flat[j].residue, config.mode);
      if (d <= config.threshold_tau)
        out.push_back(make_instance(structure.id, *flat[i].residue, *flat[j].residue, d, scorer));
    }
  return out;
}

std::vector<InteractionInstance> extract_instances(const ProteinStructure& structure,
                                                   const ContactConfig& config,
                                                   const Scorer& scorer) {
  check_inputs(structure, config);
  const auto flat = flatten(structure);
  const auto count = static_cast<std::ptrdiff_t>(flat.size());
  std::vector<std::vector<InteractionInstance>> rows(flat.size());
  std::vector<std::string> failures(flat.size());

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      for (std::ptrdiff_t j = i + 1; j < count; ++j) {
        if (!pair_eligible(flat[i], flat[j], config)) continue;
        const double d = residue_distance(*flat[i].residue, *flat[j].residue, config.mode);
        if (d <= config.threshold_tau)
          rows[i].push_back(
              make_instance(structure.id, *flat[i].residue, *flat[j].residue, d, scorer));
      }
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  }

  for (const auto& failure : failures)
    if (!failure.empty())
      throw Error(ErrorKind::MissingAtom, failure.substr(failure.find(": ") + 2));

  std::vector<InteractionInstance> out;
  for (auto& row : rows)
    for (auto& instance : row) out.push_back(std::move(instance));
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_instances_csv(std::ostream& out, std::span<const InteractionInstance> instances) {
  out << "protein_id,class,chain_i,seq_i,chain_j,seq_j,distance,score\n";
  for (const auto& inst : instances)
    out << inst.protein_id << ',' << inst.cls.label() << ',' << inst.first.chain << ','
        << inst.first.seq << ',' << inst.second.chain << ',' << inst.second.seq << ','
        << format_double(inst.distance) << ',' << format_double(inst.score) << '\n';
}

std::vector<InteractionInstance> read_instances_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Schema, "empty instance CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "protein_id,class,chain_i,seq_i,chain_j,seq_j,distance,score")
    throw Error(ErrorKind::Schema, "unexpected instance CSV header");
  std::vector<InteractionInstance> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    // Chain ids may be blank, so split without trimming.
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    auto bad = [&](const std::string& what) {
      return Error(ErrorKind::Schema, "instance CSV line " + std::to_string(line_no) + ": " + what);
    };
    if (f.size() != 8) throw bad("expected 8 fields");
    if (f[2].size() != 1 || f[4].size() != 1) throw bad("chain ids must be one character");
    InteractionInstance inst;
    inst.protein_id = f[0];
    inst.cls = InteractionClass::from_label(f[1]);
    inst.first.chain = f[2][0];
    inst.second.chain = f[4][0];
    try {
      inst.first.seq = std::stoi(f[3]);
      inst.second.seq = std::stoi(f[5]);
    } catch (const std::exception&) {
      throw bad("bad sequence number");
    }
    if (!parse_double(f[6], inst.distance) || !parse_double(f[7], inst.score))
      throw bad("bad number");
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace protpref
