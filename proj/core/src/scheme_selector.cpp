#include "schemeforge/scheme_selector.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "schemeforge/errors.hpp"

namespace schemeforge {

std::string_view to_string(SchemeKind kind) noexcept {
  switch (kind) {
    case SchemeKind::FDM: return "FDM";
    case SchemeKind::FVM: return "FVM";
    case SchemeKind::CGM: return "CGM";
    case SchemeKind::DGM: return "DGM";
  }
  return "?";
}

std::string_view to_string(DecisionNode node) noexcept {
  switch (node) {
    case DecisionNode::P1: return "P1";
    case DecisionNode::P2: return "P2";
    case DecisionNode::P3: return "P3";
    case DecisionNode::P4: return "P4";
    case DecisionNode::D1: return "D1";
    case DecisionNode::D2: return "D2";
    case DecisionNode::D3: return "D3";
    case DecisionNode::D4: return "D4";
    case DecisionNode::D5: return "D5";
  }
  return "?";
}

std::optional<SchemeKind> parse_scheme_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto kind : {SchemeKind::FDM, SchemeKind::FVM, SchemeKind::CGM, SchemeKind::DGM}) {
    if (upper == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::string SchemeAssignment::verdict(DecisionNode node) const {
  auto it = std::find_if(trail.begin(), trail.end(),
                         [&](const TrailEntry& e) { return e.node == node; });
  return it == trail.end() ? "n.a." : it->verdict;
}

std::vector<SchemeAssignment> select_schemes(const ProblemSpec& spec,
                                             const ClassifierOptions& options) {
  const auto hw = classify_hardware(spec.hardware, options.worker_threshold);
  const bool multiscale = evaluate_multiscale(spec.scales, options.multiscale_ratio);
  const bool massive = hw.massively_parallel || multiscale;

  const std::vector<TrailEntry> prefix{
      {DecisionNode::P1, std::string(to_string(hw.reason))},
      {DecisionNode::P2, multiscale ? "multiscale" : "single_scale"},
      {DecisionNode::D1, massive ? "yes" : "no"},
  };

  std::vector<SchemeAssignment> out;
  // D5 loop: one pass per governed field, in declaration order.
  for (const auto& field : spec.fields) {
    if (!field.governed) continue;
    SchemeAssignment a{field.name, SchemeKind::DGM, prefix};
    if (massive) {
      out.push_back(std::move(a));
      continue;
    }

    const auto* eq = spec.equation_for(field.name);
    if (!eq) throw Error(ErrorCode::ValidationError, "governed field has no equation", field.name);

    PdeClassification cls;
    try {
      cls = classify_equation(*eq, spec.domain, options);
    } catch (const Error& e) {
      throw Error(e.code(), "field '" + field.name + "': " + e.what(), field.name);
    }

    a.trail.push_back({DecisionNode::P3, std::string(to_string(cls.type))});
    const bool hyperbolic = cls.type == PdeType::HyperbolicFirstOrder ||
                            cls.type == PdeType::HyperbolicSecondOrder;
    if (!hyperbolic) {
      a.trail.push_back({DecisionNode::D2, std::string(to_string(cls.type))});
      const bool cartesian =
          spec.domain.geometry == Geometry::CartesianRegular && !spec.domain.has_holes;
      a.trail.push_back({DecisionNode::D3, cartesian ? "cartesian" : "irregular"});
      a.scheme = cartesian ? SchemeKind::FDM : SchemeKind::CGM;
    } else {
      a.trail.push_back({DecisionNode::D2, "hyperbolic"});
      a.trail.push_back({DecisionNode::P4, std::string(to_string(cls.linearity))});
      a.trail.push_back({DecisionNode::D4, std::string(to_string(cls.linearity))});
      const bool mild =
          cls.linearity == Linearity::Linear || cls.linearity == Linearity::Semilinear;
      a.scheme = mild ? SchemeKind::DGM : SchemeKind::FVM;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::string format_trail(const std::vector<TrailEntry>& trail) {
  std::string out;
  for (const auto& e : trail) {
    if (!out.empty()) out += ';';
    out += to_string(e.node);
    out += '=';
    out += e.verdict;
  }
  return out;
}

std::string render_assignment_table(const std::vector<SchemeAssignment>& assignments) {
  const std::vector<std::string> header{"Field", "D1", "D2", "D3", "D4", "Scheme"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& a : assignments) {
    rows.push_back({a.field, a.verdict(DecisionNode::D1), a.verdict(DecisionNode::D2),
                    a.verdict(DecisionNode::D3), a.verdict(DecisionNode::D4),
                    std::string(to_string(a.scheme))});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }

  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      os << (c + 1 < cells.size() ? "  " : "\n");
    }
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  os << std::string(total - 2, '-') << '\n';
  for (const auto& r : rows) line(r);
  os << '\n';
  for (const auto& a : assignments) os << a.field << ": " << format_trail(a.trail) << '\n';
  return os.str();
}

std::string render_assignment_csv(const std::vector<SchemeAssignment>& assignments) {
  std::string out = "field,scheme,trail\n";
  for (const auto& a : assignments) {
    out += a.field + ',' + std::string(to_string(a.scheme)) + ',' + format_trail(a.trail) + '\n';
  }
  return out;
}

}  // namespace schemeforge
