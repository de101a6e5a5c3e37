#include "kex/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace kex {

namespace {

Rational rational_from_json_number(const nlohmann::json& j, const std::string& field) {
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    if (j.is_number_unsigned()) {
        return Rational(static_cast<std::int64_t>(j.get<std::uint64_t>()));
    }
    if (j.is_number_float()) {
        // Recover the exact decimal: nlohmann prints the shortest round-trip
        // representation, so "0.5" comes back as 1/2 rather than a binary
        // approximation.
        return Rational::from_decimal_string(j.dump());
    }
    throw InstanceError(field + ": expected a number");
}

}  // namespace

Rational Rational::from_decimal_string(const std::string& s) {
    if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
        // Scientific notation: fall back through long double parsing of the
        // mantissa/exponent split.
        const auto epos = s.find_first_of("eE");
        Rational mantissa = from_decimal_string(s.substr(0, epos));
        int exp = std::stoi(s.substr(epos + 1));
        Rational scale(1);
        for (int i = 0; i < std::abs(exp); ++i) scale = scale * Rational(10);
        return exp >= 0 ? mantissa * scale : Rational(mantissa.num(), mantissa.den() * scale.num());
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) {
        return Rational(std::stoll(s));
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rational(std::stoll(digits), den);
}

Instance::Instance(int rdp_count, int ndd_count, std::vector<Arc> arcs,
                   std::vector<Rational> weights, std::vector<Rational> tau_weights,
                   bool allow_self_loops)
    : rdp_count_(rdp_count),
      ndd_count_(ndd_count),
      allow_self_loops_(allow_self_loops) {
    if (rdp_count < 0 || ndd_count < 0) throw InstanceError("vertex counts must be nonnegative");
    if (arcs.size() != weights.size()) throw InstanceError("arcs and weights must align");
    if (static_cast<int>(tau_weights.size()) != rdp_count + ndd_count)
        throw InstanceError("tau_weights must cover every vertex");

    std::vector<std::size_t> idx(arcs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return arcs[a] < arcs[b]; });
    for (std::size_t i : idx) {
        arcs_.push_back(arcs[i]);
        weights_.push_back(weights[i]);
    }
    tau_weights_ = std::move(tau_weights);

    const int n = vertex_count();
    out_.resize(n);
    in_.resize(n);
    std::set<Arc> seen;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& a = arcs_[i];
        if (!seen.insert(a).second)
            throw InstanceError("duplicate arc (" + std::to_string(a.from) + "," +
                                std::to_string(a.to) + ")");
        if (a.from < 1 || a.from > n || a.to < 1 || a.to > n)
            throw InstanceError("arc endpoint out of range: (" + std::to_string(a.from) + "," +
                                std::to_string(a.to) + ")");
        if (!is_rdp(a.to))
            throw InstanceError("arc target must be a recipient-donor pair: (" +
                                std::to_string(a.from) + "," + std::to_string(a.to) + ")");
        if (a.from == a.to && !allow_self_loops_)
            throw InstanceError("self-loop (" + std::to_string(a.from) + "," +
                                std::to_string(a.to) + ") not allowed");
        if (weights_[i] < Rational(0)) throw InstanceError("negative arc weight");
        if (is_rdp(a.from)) ++rr_arcs_;
        out_[a.from - 1].push_back(a.to);
        in_[a.to - 1].push_back(a.from);
    }
    for (const Rational& w : tau_weights_)
        if (w < Rational(0)) throw InstanceError("negative tau weight");
    for (auto& v : out_) std::sort(v.begin(), v.end());
    for (auto& v : in_) std::sort(v.begin(), v.end());
}

std::optional<int> Instance::arc_index(int u, int v) const {
    const Arc key{u, v};
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), key);
    if (it != arcs_.end() && *it == key) return static_cast<int>(it - arcs_.begin());
    return std::nullopt;
}

const Rational& Instance::arc_weight(int u, int v) const {
    auto i = arc_index(u, v);
    if (!i) throw InstanceError("no arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return weights_[*i];
}

bool operator==(const Instance& a, const Instance& b) {
    return a.rdp_count_ == b.rdp_count_ && a.ndd_count_ == b.ndd_count_ &&
           a.arcs_ == b.arcs_ && a.weights_ == b.weights_ &&
           a.tau_weights_ == b.tau_weights_ && a.allow_self_loops_ == b.allow_self_loops_;
}

Instance parse_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InstanceError(std::string("malformed instance document: ") + e.what());
    }
    if (!j.is_object()) throw InstanceError("instance document must be an object");
    if (!j.contains("rdp_count")) throw InstanceError("rdp_count: missing");
    if (!j.contains("ndd_count")) throw InstanceError("ndd_count: missing");
    const int rdp = j.at("rdp_count").get<int>();
    const int ndd = j.at("ndd_count").get<int>();
    const bool self_loops = j.value("allow_self_loops", false);

    std::vector<Arc> arcs;
    std::vector<Rational> weights;
    if (j.contains("arcs")) {
        if (!j.at("arcs").is_array()) throw InstanceError("arcs: expected an array");
        for (const auto& a : j.at("arcs")) {
            if (!a.contains("from") || !a.contains("to"))
                throw InstanceError("arcs: each arc needs from and to");
            arcs.push_back(Arc{a.at("from").get<int>(), a.at("to").get<int>()});
            weights.push_back(a.contains("weight")
                                  ? rational_from_json_number(a.at("weight"), "weight")
                                  : Rational(1));
        }
    }
    std::vector<Rational> tau(static_cast<std::size_t>(rdp + ndd), Rational(0));
    if (j.contains("tau_weights")) {
        if (!j.at("tau_weights").is_object()) throw InstanceError("tau_weights: expected an object");
        for (const auto& [key, val] : j.at("tau_weights").items()) {
            int v = 0;
            try {
                v = std::stoi(key);
            } catch (...) {
                throw InstanceError("tau_weights: bad vertex key '" + key + "'");
            }
            if (v < 1 || v > rdp + ndd) throw InstanceError("tau_weights: vertex out of range");
            tau[v - 1] = rational_from_json_number(val, "tau_weights");
        }
    }
    return Instance(rdp, ndd, std::move(arcs), std::move(weights), std::move(tau), self_loops);
}

std::string serialize_instance(const Instance& inst) {
    nlohmann::ordered_json j;
    j["rdp_count"] = inst.rdp_count();
    j["ndd_count"] = inst.ndd_count();
    j["arcs"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
        nlohmann::ordered_json a;
        a["from"] = inst.arcs()[i].from;
        a["to"] = inst.arcs()[i].to;
        const Rational& w = inst.weights()[i];
        if (w.is_integer())
            a["weight"] = w.num();
        else
            a["weight"] = w.to_double();
        j["arcs"].push_back(a);
    }
    nlohmann::ordered_json tau = nlohmann::ordered_json::object();
    for (int v = 1; v <= inst.vertex_count(); ++v) {
        const Rational& w = inst.tau_weight(v);
        if (w != Rational(0)) {
            if (w.is_integer())
                tau[std::to_string(v)] = w.num();
            else
                tau[std::to_string(v)] = w.to_double();
        }
    }
    if (!tau.empty()) j["tau_weights"] = tau;
    if (inst.allow_self_loops()) j["allow_self_loops"] = true;
    return j.dump(2) + "\n";
}

std::vector<DegreeInfo> degrees(const Instance& inst) {
    std::vector<DegreeInfo> d(static_cast<std::size_t>(inst.rdp_count()));
    for (const Arc& a : inst.arcs()) {
        if (inst.is_rdp(a.to)) d[a.to - 1].in++;
        if (inst.is_rdp(a.from) && inst.is_rdp(a.to)) d[a.from - 1].out++;
    }
    for (auto& x : d) x.total = x.in + x.out;
    return d;
}

ReindexResult reindex(const Instance& inst, VertexOrder order) {
    const int r = inst.rdp_count();
    std::vector<int> verts(static_cast<std::size_t>(r));
    for (int v = 1; v <= r; ++v) verts[v - 1] = v;
    if (order != VertexOrder::Identity) {
        auto deg = degrees(inst);
        std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) {
            const int da = deg[a - 1].total, db = deg[b - 1].total;
            if (da != db) return order == VertexOrder::DegreeDesc ? da > db : da < db;
            return a < b;
        });
    }
    ReindexResult res;
    res.new_of_old.resize(static_cast<std::size_t>(r));
    res.old_of_new.resize(static_cast<std::size_t>(r));
    for (int pos = 0; pos < r; ++pos) {
        res.new_of_old[verts[pos] - 1] = pos + 1;
        res.old_of_new[pos] = verts[pos];
    }
    std::vector<Arc> arcs;
    std::vector<Rational> weights;
    for (std::size_t i = 0; i < inst.arcs().size(); ++i) {
        const Arc& a = inst.arcs()[i];
        arcs.push_back(Arc{res.to_new(a.from), res.to_new(a.to)});
        weights.push_back(inst.weights()[i]);
    }
    std::vector<Rational> tau(static_cast<std::size_t>(inst.vertex_count()));
    for (int v = 1; v <= inst.vertex_count(); ++v) tau[res.to_new(v) - 1] = inst.tau_weight(v);
    res.instance = Instance(inst.rdp_count(), inst.ndd_count(), std::move(arcs),
                            std::move(weights), std::move(tau), inst.allow_self_loops());
    return res;
}

}  // namespace kex
