#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "lcert/bits.hpp"
#include "lcert/graph.hpp"

namespace lc {

// Named fields, each a bit string; the canonical encoding writes the fields in
// order, each as gamma(length) followed by its payload.
struct Certificate {
    std::vector<std::pair<std::string, BitString>> fields;

    void add(std::string name, BitString bits) { fields.emplace_back(std::move(name), std::move(bits)); }
    const BitString* find(const std::string& name) const;
    const BitString& field(const std::string& name) const;
    BitString encode() const;
    static Certificate decode(const BitString& bits, const std::vector<std::string>& schema);
    bool operator==(const Certificate&) const;
};

using CertificateAssignment = std::map<VertexId, Certificate>;
using EncodedAssignment = std::map<VertexId, CertificateBits>;

EncodedAssignment encode_assignment(const CertificateAssignment& a);

struct NodeResult {
    bool accept = true;
    std::string reason;
    static NodeResult ok() { return {true, "ok"}; }
    static NodeResult reject(std::string why) { return {false, std::move(why)}; }
};

struct CertScheme {
    std::string name;
    int radius = 1;
    std::vector<std::string> fields;
    std::function<CertificateAssignment(const LabeledGraph&)> prover;
    std::function<NodeResult(const RadiusView&)> verifier;
};

template <class Out>
struct StepResult {
    std::optional<Out> output;
    std::string reason;
    static StepResult reject(std::string why) { return {std::nullopt, std::move(why)}; }
    static StepResult emit(Out o) { return {std::move(o), "ok"}; }
};

template <class Out>
struct ComputationScheme {
    std::string name;
    int radius = 1;
    std::vector<std::string> fields;
    std::function<CertificateAssignment(const LabeledGraph&)> prover;
    std::function<StepResult<Out>(const RadiusView&)> node_step;
};

struct Verdict {
    bool accepted = true;
    std::set<VertexId> rejecting;
    std::map<VertexId, std::string> reasons;
};

// worker count for per-vertex evaluation; 0 = hardware concurrency
void set_jobs(unsigned jobs);
unsigned jobs();

// Runs f(i) for i in [0, count) on the configured number of workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

Verdict run_certification(const LabeledGraph& g, const CertScheme& s, const CertificateAssignment* a = nullptr);
Verdict run_certification_encoded(const LabeledGraph& g, const CertScheme& s, const EncodedAssignment& enc);

struct SchemeBug : std::logic_error {
    using std::logic_error::logic_error;
};

template <class Out>
struct ComputationRun {
    bool accepted = true;
    std::map<VertexId, std::optional<Out>> outputs;
    std::map<VertexId, std::string> reasons;
};

void check_domain(const LabeledGraph& g, const EncodedAssignment& enc);

template <class Out>
ComputationRun<Out> run_computation_encoded(const LabeledGraph& g, const ComputationScheme<Out>& s,
                                            const EncodedAssignment& enc)
{
    check_domain(g, enc);
    std::vector<StepResult<Out>> res(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
        auto view = radius_view(g, g.id(static_cast<int>(i)), s.radius, &enc);
        res[i] = s.node_step(view);
    });
    ComputationRun<Out> run;
    for (int i = 0; i < g.size(); ++i) {
        run.outputs[g.id(i)] = res[i].output;
        run.reasons[g.id(i)] = res[i].reason;
        if (!res[i].output)
            run.accepted = false;
    }
    return run;
}

// Honest run; a rejection here is a bug in the scheme.
template <class Out>
ComputationRun<Out> run_computation_scheme(const LabeledGraph& g, const ComputationScheme<Out>& s)
{
    auto enc = encode_assignment(s.prover(g));
    auto run = run_computation_encoded(g, s, enc);
    if (!run.accepted) {
        for (auto& [v, r] : run.reasons)
            if (r != "ok")
                throw SchemeBug(s.name + ": honest certificates rejected at vertex " + std::to_string(v) + " (" +
                                r + ")");
    }
    return run;
}

struct SizeReport {
    std::size_t max_bits = 0;
    std::size_t total_bits = 0;
    std::map<std::string, std::size_t> field_max;   // largest payload per field
    std::map<std::string, std::size_t> field_total; // summed payload per field
};

SizeReport measure_certificates(const CertificateAssignment& a);

// text dump: "vertex <id>" then one "<field> <len>:<hex>" line per field
std::string dump_assignment(const CertificateAssignment& a);
CertificateAssignment parse_assignment(const std::string& text);
std::string verdict_lines(const LabeledGraph& g, const Verdict& v);

// ---------------------------------------------------------------- fuzzing

enum class FuzzStrategy { Bitflip, Splice, Relabel, GadgetHybrid };
FuzzStrategy parse_strategy(const std::string& s);
std::string strategy_name(FuzzStrategy s);

struct FuzzViolation {
    std::size_t trial = 0;
    std::string description;
    std::string assignment_dump;
};

struct FuzzReport {
    std::size_t trials = 0;
    std::size_t rejected = 0; // trials where some vertex rejected
    std::vector<FuzzViolation> violations;
};

// Produces adversarial assignments from an honest one. `donor` supplies
// certificates from another graph on the same identifiers (splice, hybrid).
class Corruptor {
public:
    Corruptor(const LabeledGraph& g, FuzzStrategy strategy, std::uint64_t seed,
              std::function<CertificateAssignment(std::mt19937_64&)> donor = {});
    CertificateAssignment next(const CertificateAssignment& honest, std::string* what);

private:
    const LabeledGraph& g_;
    FuzzStrategy strategy_;
    std::mt19937_64 rng_;
    std::function<CertificateAssignment(std::mt19937_64&)> donor_;
};

// CertScheme soundness: on a NO-instance every corrupted assignment must be
// rejected somewhere. On YES-instances nothing can be violated.
FuzzReport fuzz_soundness(const LabeledGraph& g, const CertScheme& s, bool yes_instance, FuzzStrategy strategy,
                          std::uint64_t seed, std::size_t budget,
                          std::function<CertificateAssignment(std::mt19937_64&)> donor = {});

// ComputationScheme contract (i): no rejection implies correct outputs.
template <class Out>
FuzzReport fuzz_computation(const LabeledGraph& g, const ComputationScheme<Out>& s,
                            const std::function<Out(const LabeledGraph&, VertexId)>& reference,
                            FuzzStrategy strategy, std::uint64_t seed, std::size_t budget,
                            std::function<CertificateAssignment(std::mt19937_64&)> donor = {})
{
    FuzzReport rep;
    if (budget == 0)
        return rep;
    auto honest = s.prover(g);
    std::map<VertexId, Out> expect;
    for (auto v : g.ids())
        expect.emplace(v, reference(g, v));
    Corruptor c(g, strategy, seed, donor);
    for (std::size_t t = 0; t < budget; ++t) {
        std::string what;
        auto bad = c.next(honest, &what);
        auto run = run_computation_encoded(g, s, encode_assignment(bad));
        ++rep.trials;
        if (!run.accepted) {
            ++rep.rejected;
            continue;
        }
        for (auto& [v, out] : run.outputs)
            if (!(*out == expect.at(v))) {
                rep.violations.push_back({t, what + ": wrong output at " + std::to_string(v), dump_assignment(bad)});
                break;
            }
    }
    return rep;
}

} // namespace lc
