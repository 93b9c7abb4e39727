#pragma once

#include <string>
#include <vector>

namespace fracdual {

enum class Verdict { holds, violated, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct HypothesisCheck {
  std::string description;
  double residual = 0.0;  // worst slack; >= -tol means satisfied
  bool satisfied = true;
};

struct Conclusion {
  std::string description;
  double extremal_value = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Structured record of one principle check or experiment: which hypotheses
/// were verified numerically, the extremal value behind the conclusion, and
/// the verdict. A check whose hypotheses fail is inconclusive, never
/// "violated" -- the theorems are tested, arbitrary fields are not
/// classified.
struct ExperimentReport {
  std::string name;
  std::vector<HypothesisCheck> hypotheses;
  Conclusion conclusion;
  std::vector<std::string> artifacts;
  double hypothesis_tol = 1e-6;
  double conclusion_tol = 1e-8;

  bool hypotheses_ok() const {
    for (const auto& h : hypotheses)
      if (!h.satisfied) return false;
    return true;
  }

  /// Sign-condition conclusion. A clean minimum reports "holds"; an
  /// undershoot reports "violated" only when every hypothesis stood, and
  /// "inconclusive" otherwise -- failed hypotheses must never manufacture a
  /// counterexample.
  void conclude_nonnegative(const std::string& description, double extremal) {
    conclusion.description = description;
    conclusion.extremal_value = extremal;
    if (extremal >= -conclusion_tol)
      conclusion.verdict = Verdict::holds;
    else
      conclusion.verdict =
          hypotheses_ok() ? Verdict::violated : Verdict::inconclusive;
  }

  void add_hypothesis(const std::string& description, double residual) {
    hypotheses.push_back({description, residual, residual >= -hypothesis_tol});
  }
  void add_hypothesis_flag(const std::string& description, bool ok) {
    hypotheses.push_back({description, ok ? 0.0 : -1.0, ok});
  }
};

}  // namespace fracdual
