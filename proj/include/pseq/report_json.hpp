#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "pseq/analysis.hpp"
#include "pseq/search.hpp"

namespace pseq {

inline const char* to_string(BalanceKind kind) {
  switch (kind) {
    case BalanceKind::almost_balanced: return "almost_balanced";
    case BalanceKind::strictly_balanced: return "strictly_balanced";
    default: return "other";
  }
}

/// JSON form of an AnalysisReport. Key set and names are a stable interface:
/// p, N, mu, balance {kind, exceptional, t}, period_admissible, itla,
/// first_failing_shift (null when itla), sum_mag_sq_is_one, degenerate.
inline nlohmann::ordered_json report_to_json(const AnalysisReport& rep) {
  nlohmann::ordered_json balance;
  balance["kind"] = to_string(rep.balance.kind);
  balance["exceptional"] = rep.balance.exceptional ? nlohmann::ordered_json(*rep.balance.exceptional)
                                                   : nlohmann::ordered_json(nullptr);
  balance["t"] = rep.balance.t ? nlohmann::ordered_json(*rep.balance.t) : nlohmann::ordered_json(nullptr);

  nlohmann::ordered_json out;
  out["p"] = rep.p;
  out["N"] = rep.N;
  out["mu"] = rep.profile.mu;
  out["balance"] = balance;
  out["period_admissible"] = rep.period_admissible;
  out["itla"] = rep.itla;
  out["first_failing_shift"] = rep.first_failing_shift ? nlohmann::ordered_json(*rep.first_failing_shift)
                                                       : nlohmann::ordered_json(nullptr);
  out["sum_mag_sq_is_one"] = rep.sum_mag_sq.equals_integer(1);
  out["degenerate"] = rep.degenerate;
  return out;
}

inline nlohmann::ordered_json search_header_json(const SearchSpec& spec, const SearchResult& result) {
  nlohmann::ordered_json out;
  out["p"] = spec.p;
  out["N"] = spec.N;
  out["count"] = result.sequences.size();
  out["canonicalized"] = spec.canonicalize;
  out["enumerated"] = result.enumerated;
  out["pruned"] = result.pruned;
  out["elapsed_ms"] = result.elapsed.count();
  if (result.sequences.empty()) out["reason"] = to_string(result.reason);
  return out;
}

/// Search stream: one JSON header line, then the sequence-file records
/// separated by blank lines.
inline void write_search_stream(std::ostream& os, const SearchSpec& spec, const SearchResult& result) {
  os << search_header_json(spec, result).dump() << "\n";
  for (const auto& seq : result.sequences) {
    os << "\n" << emit_sequence(seq);
  }
}

}  // namespace pseq
