#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schemeforge/classifier.hpp"
#include "schemeforge/problem_spec.hpp"

namespace schemeforge {

enum class SchemeKind { FDM, FVM, CGM, DGM };

/// Nodes of the selection flowchart: processes P1-P4 and decisions D1-D5.
enum class DecisionNode { P1, P2, P3, P4, D1, D2, D3, D4, D5 };

std::string_view to_string(SchemeKind kind) noexcept;
std::string_view to_string(DecisionNode node) noexcept;
std::optional<SchemeKind> parse_scheme_kind(std::string_view text);

struct TrailEntry {
  DecisionNode node;
  std::string verdict;

  bool operator==(const TrailEntry&) const = default;
};

struct SchemeAssignment {
  std::string field;
  SchemeKind scheme = SchemeKind::DGM;
  /// Starts at P1, ends at the node that emitted the scheme (D1, D3 or D4).
  std::vector<TrailEntry> trail;

  /// Verdict recorded for `node`, or "n.a." when the path did not visit it.
  [[nodiscard]] std::string verdict(DecisionNode node) const;
  bool operator==(const SchemeAssignment&) const = default;
};

/// Walks the flowchart once for the whole problem (P1, P2, D1) and then per
/// governed field (P3, D2, D3 | P4, D4). A "yes" at D1 assigns DGM to every
/// governed field without visiting the per-field nodes. Classifier errors are
/// rethrown with the field name as path.
std::vector<SchemeAssignment> select_schemes(const ProblemSpec& spec,
                                             const ClassifierOptions& options = {});

/// "P1=below_threshold;P2=single_scale;D1=no;..."
std::string format_trail(const std::vector<TrailEntry>& trail);

/// Aligned table with the D1-D4 verdict columns and the scheme.
std::string render_assignment_table(const std::vector<SchemeAssignment>& assignments);

/// `field,scheme,trail` with a header row.
std::string render_assignment_csv(const std::vector<SchemeAssignment>& assignments);

}  // namespace schemeforge
