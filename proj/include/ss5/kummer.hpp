#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ss5/curves.hpp"
#include "ss5/forms.hpp"

namespace ss5::kummer {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// y^2 = D(x), D = d0 + d1 x + ... + d6 x^6 separable of degree 6.
struct Genus2Curve {
  FieldCtx F;
  std::array<FieldElem, 7> d{};
  std::string label;
  UniPoly D() const;
};

// Degree 6 input is kept. Degree 5 input is moved to degree 6 by
// x -> a + 1/x, y -> y/x^3 with the smallest a such that D(a) != 0.
Genus2Curve sextic_normalize(const FieldCtx& F, const UniPoly& D, const std::string& label = "");

struct KummerSurface {
  MPoly K2, K1, K0;  // forms in x, y, z
  MPoly kappa;       // K2 w^2 + K1 w + K0
};

KummerSurface kummer_surface(const Genus2Curve& Z);

using Point4 = std::array<FieldElem, 4>;

struct Nodes {
  FieldCtx E;  // splitting field of D
  std::vector<Point4> pts;
};

// The 16 singular points, each asserted to satisfy kappa = 0 and grad kappa = 0.
Nodes kummer_nodes(const Genus2Curve& Z, const KummerSurface& K);

struct PlaneV {
  FieldElem a, b, c, d;
};

// Substitute the last variable with nonzero coefficient (w, then z, y, x);
// the remaining three variables become x, y, z in order.
PlaneQuartic plane_section(const FieldCtx& F, const KummerSurface& K, const PlaneV& V);
bool plane_avoids_nodes(const FieldCtx& F, const Nodes& nodes, const PlaneV& V);

struct SearchResult {
  std::uint64_t index = 0;
  std::string chart;
  PlaneV plane;
  PlaneQuartic quartic;
  Matrix cartier;
  int stable_rank = -1;
  std::vector<std::uint64_t> counts;
  std::optional<LPolynomial> L;
  std::string status;  // "supersingular", "prank0-only" or "rejected"
  std::string reason;
};

// Planes of P^3(F_p) in scan order: d = 1 chart, then d = 0 with c = 1,
// then b = 1, then a = 1.
std::uint64_t plane_count(std::uint32_t p);
PlaneV plane_at(const FieldCtx& F, std::uint64_t index, std::string* chart = nullptr);

struct Prepared {
  Genus2Curve Z;
  KummerSurface K;
  Nodes nodes;
};
Prepared prepare(const Genus2Curve& Z);

SearchResult classify_plane(const Prepared& P, const PlaneV& V, const CountOptions& opt = {});

struct SearchConfig {
  CountOptions count;
  int jobs = 1;
  std::uint64_t start = 0;
  std::uint64_t end = UINT64_MAX;
  std::uint64_t chunk = 10000;
  bool stop_at_first = false;
  const std::atomic<bool>* stop = nullptr;
  // Called after each chunk with the next unprocessed index and all hits so far.
  std::function<void(std::uint64_t, const std::vector<SearchResult>&)> on_progress;
};

struct SearchOutcome {
  std::vector<SearchResult> found;  // status != "rejected", in index order
  std::map<std::string, std::uint64_t> status_counts;
  std::uint64_t next_index = 0;
  bool complete = false;
  std::uint64_t supersingular_projective() const;
  std::uint64_t supersingular_affine() const;  // d = 1 chart only
};

SearchOutcome search_planes(const Genus2Curve& Z, const SearchConfig& cfg);
SearchOutcome search_planes(const Prepared& P, const SearchConfig& cfg);

struct Genus2Certificate {
  LPolynomial L;
  NewtonPolygon np;
  int cartier_rank = -1;
};
Genus2Certificate certify_genus2(const Genus2Curve& Z, const CountOptions& opt = {});

// Supersingular sextics over F_p in ascending coefficient order (d0 fastest).
std::vector<Genus2Curve> genus2_supersingular_scan(std::uint32_t p, std::size_t max_results = SIZE_MAX);

struct Table1Row {
  std::uint32_t p;
  std::array<std::int64_t, 7> d;  // as printed, d0 first
  std::array<std::int64_t, 4> v;  // a, b, c, d
};
const std::vector<Table1Row>& table1_rows();

struct Table1Report {
  std::uint32_t p = 0;
  Genus2Curve Z;
  PlaneV plane;
  bool genus2_supersingular = false;
  bool smooth = false;
  bool node_free = false;
  int stable_rank = -1;
  std::optional<LPolynomial> L;
  bool quartic_supersingular = false;
  bool pass = false;
  std::string error;
  double seconds = 0;
};

Table1Report verify_table1_row(const Table1Row& row, const CountOptions& opt = {});
// All rows, or only the row for p. Throws InputError for a p without a row.
std::vector<Table1Report> verify_table1(std::optional<std::uint32_t> p = std::nullopt, const CountOptions& opt = {});

}  // namespace ss5::kummer
