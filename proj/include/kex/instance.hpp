#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kex/rational.hpp"

namespace kex {

// Terminal vertex: every RDP and NDD has an implicit arc to it.
inline constexpr int kTau = 0;

struct Arc {
    int from = 0;
    int to = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A kidney-exchange compatibility graph. Recipient-donor pairs are numbered
// 1..rdp_count, non-directed donors rdp_count+1..rdp_count+ndd_count. The
// terminal vertex is implicit: every vertex has an arc to it whose weight is
// stored in tau_weights. Instances are immutable after construction.
class Instance {
public:
    Instance() = default;
    Instance(int rdp_count, int ndd_count, std::vector<Arc> arcs,
             std::vector<Rational> weights, std::vector<Rational> tau_weights,
             bool allow_self_loops = false);

    int rdp_count() const { return rdp_count_; }
    int ndd_count() const { return ndd_count_; }
    int vertex_count() const { return rdp_count_ + ndd_count_; }
    bool allow_self_loops() const { return allow_self_loops_; }

    bool is_rdp(int v) const { return v >= 1 && v <= rdp_count_; }
    bool is_ndd(int v) const { return v > rdp_count_ && v <= vertex_count(); }

    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<Rational>& weights() const { return weights_; }
    // Weight of the implicit arc v -> tau.
    const Rational& tau_weight(int v) const { return tau_weights_.at(v - 1); }
    const std::vector<Rational>& tau_weights() const { return tau_weights_; }

    bool has_arc(int u, int v) const { return arc_index(u, v).has_value(); }
    std::optional<int> arc_index(int u, int v) const;
    const Rational& arc_weight(int u, int v) const;

    // Successors of v through pair-to-pair or donor-to-pair arcs.
    const std::vector<int>& successors(int v) const { return out_.at(v - 1); }
    // Predecessors of an RDP (may include NDDs).
    const std::vector<int>& predecessors(int v) const { return in_.at(v - 1); }

    int rr_arc_count() const { return rr_arcs_; }
    int nr_arc_count() const { return static_cast<int>(arcs_.size()) - rr_arcs_; }

    friend bool operator==(const Instance& a, const Instance& b);

private:
    int rdp_count_ = 0;
    int ndd_count_ = 0;
    std::vector<Arc> arcs_;                 // sorted (from, to)
    std::vector<Rational> weights_;         // parallel to arcs_
    std::vector<Rational> tau_weights_;     // index v-1
    bool allow_self_loops_ = false;
    int rr_arcs_ = 0;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

struct DegreeInfo {
    int in = 0;
    int out = 0;
    int total = 0;
    friend bool operator==(const DegreeInfo&, const DegreeInfo&) = default;
};

// Per-RDP degrees: incoming counted over all arcs, outgoing over
// pair-to-pair arcs only (an RDP never points at an NDD).
std::vector<DegreeInfo> degrees(const Instance& inst);

enum class VertexOrder { Identity, DegreeDesc, DegreeAsc };

struct ReindexResult {
    Instance instance;
    // new_of_old[v-1] = new label of original RDP v; NDD labels unchanged.
    std::vector<int> new_of_old;
    std::vector<int> old_of_new;

    int to_new(int v) const {
        return v >= 1 && v <= static_cast<int>(new_of_old.size()) ? new_of_old[v - 1] : v;
    }
    int to_old(int v) const {
        return v >= 1 && v <= static_cast<int>(old_of_new.size()) ? old_of_new[v - 1] : v;
    }
};

// Relabels RDPs by degree (ties broken by original index ascending);
// NDDs and tau keep their labels.
ReindexResult reindex(const Instance& inst, VertexOrder order);

}  // namespace kex
