#include "protpref/error.hpp"

namespace protpref {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::EmptyStructure: return "EmptyStructure";
    case ErrorKind::MissingAtom: return "MissingAtom";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::BadTable: return "BadTable";
    case ErrorKind::MixedProteins: return "MixedProteins";
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::WrongMode: return "WrongMode";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::AntipodalDegenerate: return "AntipodalDegenerate";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InapplicableAxiom: return "InapplicableAxiom";
    case ErrorKind::TiesUnsupported: return "TiesUnsupported";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace protpref
