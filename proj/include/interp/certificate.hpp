#pragma once

#include <string>

#include <json.hpp>

namespace interp {

enum class Verdict { HoldsAtScale, FailsAtScale };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Finite-scale witness or refutation for a predicate on a subset of N.
/// `scale` records every parameter the verdict depends on (including the
/// window bound), so a certificate can be replayed from itself alone.
struct Certificate {
  std::string predicate;
  nlohmann::json scale = nlohmann::json::object();
  Verdict verdict = Verdict::FailsAtScale;
  nlohmann::json witness = nlohmann::json::object();

  bool holds() const { return verdict == Verdict::HoldsAtScale; }
  nlohmann::json to_json() const;
  static Certificate from_json(const nlohmann::json& j);

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

}  // namespace interp
