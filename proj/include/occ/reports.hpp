#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "occ/config.hpp"
#include "occ/ktheory.hpp"
#include "occ/lambda.hpp"
#include "occ/sync.hpp"

namespace occ {

inline constexpr const char* kReportSchema = "occ.report/1";

// ---- closed-form matrices of the reset family --------------------------------------------

enum class Family { Reset, ResetRev };
std::string to_string(Family f);
Family family_from_string(const std::string& s);  // "reset" | "reset-rev" (or "reset_rev")

struct FixtureBundle {
    Family family = Family::ResetRev;
    int N = 1;
    std::size_t l = 2;
    IntMatrix MtminusIt;  // (2l+4) x (2l+2)
    IntMatrix B;          // (2l+4) x (2l+2)
    IntMatrix P;          // P_{l+1}, (2l+4) x (2l+4)
    IntMatrix Pprev;      // P_l, (2l+2) x (2l+2)
    IntMatrix It;         // I_{l,l+1}^t, (2l+4) x (2l+2)
    IntMatrix J;          // J_{l,l+1} with the subdiagonal index that makes the square commute
    IntMatrix J_printed;  // J_{l,l+1} with the superdiagonal index as printed
    IntMatrix L;          // 3 x 3
};

// UnsupportedLevel for l < 2 or N < 1.
FixtureBundle closed_form_fixtures(Family fam, int N, std::size_t l);

// Coordinates (r, phi, psi) of z in Z^{2l+4} for the reversed family at level l.
struct XiValue {
    Int r, phi, psi;
    friend bool operator==(const XiValue&, const XiValue&) = default;
};
XiValue xi(int N, std::size_t l, const IntVec& z);
// The x with z = B x + (r, phi, psi, 0, ..., 0). At l = 2 the rule for x_l would overwrite x_2; x_2 = z_{2l+3} is kept.
IntVec xi_preimage(int N, std::size_t l, const IntVec& z);

struct CheckItem {
    std::string name;
    bool passed = false;
    bool applicable = true;
    std::string detail;
};

struct CrosscheckReport {
    Family family = Family::ResetRev;
    int N = 1;
    std::size_t l = 2;
    std::vector<CheckItem> items;
    bool passed() const;
};

// Runs every check; `builder` is the nonnegative system to compare with (built when null).
CrosscheckReport crosscheck_items(Family fam, int N, std::size_t l, const Config& cfg,
                                  const NonnegMatrixSystem* builder = nullptr);
// As crosscheck_items but throws CrosscheckFailure naming the first failed check.
CrosscheckReport fixture_crosscheck(Family fam, int N, std::size_t l, const Config& cfg,
                                    const NonnegMatrixSystem* builder = nullptr);

// The graph whose matrices the closed forms describe: the future system of reset(N).
LambdaGraphSystem fixture_graph(Family fam, int N, std::size_t L, const Config& cfg);

// ---- end-to-end reports -------------------------------------------------------------------

struct GraphSummary {
    Direction direction = Direction::Future;
    std::optional<std::size_t> levels;
    std::vector<std::size_t> m;
    std::string ordering;
    std::size_t probe_length = 0;
    std::optional<StructureReport> structure;
    std::optional<SimplicityVerdict> simplicity;
    std::string error;
};

struct GroupValue {
    std::optional<FgAbelianGroup> value;
    std::optional<std::size_t> stable_from;
    std::string note;
};

struct InvariantReport {
    CodeSpec spec;
    Config config;
    std::optional<CharacteristicPairReport> pair;
    std::optional<ResetReport> reset;
    std::string sync_error;
    GraphSummary future, past;
    Direction k_direction = Direction::Past;
    GroupValue k0, k1, bf0, bf1;
    std::optional<FgAbelianGroup> reference_bf1;
    std::vector<std::string> unresolved;

    bool complete() const { return unresolved.empty(); }
};

InvariantReport full_report(const CodeSpec& spec, const Config& cfg);

// Builds, verifies and classifies one direction; gaps are appended to `unresolved`.
GraphSummary graph_summary(const SubshiftOracle& o, Direction d, const Config& cfg,
                           std::vector<std::string>& unresolved);

struct FlowVerdict {
    bool distinguished = false;
    std::string reason;
    std::vector<std::string> caveats;
};

FlowVerdict compare(const InvariantReport& a, const InvariantReport& b);
FlowVerdict compare(const CodeSpec& a, const CodeSpec& b, const Config& cfg);

// ---- serialization ------------------------------------------------------------------------

nlohmann::json to_json(const FgAbelianGroup& g);
nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const Certainty& c, const Alphabet& a);
nlohmann::json to_json(const CharacteristicPairReport& p, const Alphabet& a);
nlohmann::json to_json(const ResetReport& r, const Alphabet& a);
nlohmann::json to_json(const Config& c);
nlohmann::json to_json(const SimplicityVerdict& s);
nlohmann::json to_json(const GraphSummary& g);
nlohmann::json to_json(const FixtureBundle& b);
nlohmann::json to_json(const InvariantReport& r);
nlohmann::json to_json(const FlowVerdict& v);
nlohmann::json to_json(const CrosscheckReport& r);
nlohmann::json graph_json(const LambdaGraphSystem& g);
nlohmann::json matrices_json(const LambdaGraphSystem& g, const MatrixSystems& ms);
std::string to_text(const InvariantReport& r);

}  // namespace occ
