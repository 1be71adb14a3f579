#include "hamcert/report.hpp"

#include <string>

#include "hamcert/errors.hpp"

namespace hamcert {

using nlohmann::json;

namespace {

json set_to_json(const VertexSet& s) { return s.to_vector(); }

std::vector<Vertex> vertices_from(const json& j, std::size_t n, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<Vertex> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n)
      throw InputError(std::string(what) + " holds an invalid vertex");
    out.push_back(x.get<Vertex>());
  }
  return out;
}

VertexSet set_from(const json& j, std::size_t n, const char* what) {
  auto v = vertices_from(j, n, what);
  return VertexSet(n, v);
}

}  // namespace

json certificate_to_json(const Certificate& cert, std::size_t n) {
  json j;
  j["kind"] = std::string(to_string(cert.kind));
  switch (cert.kind) {
    case CertificateKind::min_degree:
      j["vertex"] = cert.vertex;
      j["neighbors"] = cert.neighbors;
      break;
    case CertificateKind::cover_failure: {
      const auto& f = *cert.cover;
      j["q"] = set_to_json(f.q);
      j["neighborhood"] = set_to_json(f.neighborhood);
      j["dummy"] = n;
      json edges = json::array();
      for (auto [a, b] : f.fc_edges) edges.push_back({a, b});
      j["fc_edges"] = std::move(edges);
      break;
    }
    case CertificateKind::exhaustive:
      break;
  }
  return j;
}

Certificate certificate_from_json(const json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("certificate needs a kind");
  const auto kind = j["kind"].get<std::string>();
  Certificate c;
  if (kind == "min_degree") {
    c.kind = CertificateKind::min_degree;
    if (!j.contains("vertex") || !j["vertex"].is_number_unsigned() ||
        j["vertex"].get<std::uint64_t>() >= n)
      throw InputError("min_degree certificate needs a valid vertex");
    c.vertex = j["vertex"].get<Vertex>();
    c.neighbors = vertices_from(j.value("neighbors", json::array()), n, "neighbors");
  } else if (kind == "cover_failure") {
    c.kind = CertificateKind::cover_failure;
    CoverFailure f{set_from(j.value("q", json()), n, "q"),
                   set_from(j.value("neighborhood", json()), n, "neighborhood"), {}};
    for (const auto& e : j.value("fc_edges", json::array())) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned() || e[0].get<std::uint64_t>() > n ||
          e[1].get<std::uint64_t>() > n)
        throw InputError("fc_edges entries must be vertex pairs");
      f.fc_edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    c.cover = std::move(f);
  } else if (kind == "exhaustive") {
    c.kind = CertificateKind::exhaustive;
  } else {
    throw InputError("unknown certificate kind '" + kind + "'");
  }
  return c;
}

json outcome_to_json(const Outcome& o, std::size_t n, bool with_trace) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = o.hamiltonian() ? "hamiltonian" : "not_hamiltonian";
  if (o.cycle) j["cycle"] = o.cycle->order;
  if (o.certificate) j["certificate"] = certificate_to_json(*o.certificate, n);
  const auto& s = o.stats;
  j["stats"] = {
      {"queries", s.queries},
      {"count", s.count},
      {"t", s.t},
      {"regime", std::string(to_string(s.regime))},
      {"fallback_used", s.fallback_used},
      {"t_a_nanos", s.t_a_nanos},
      {"t_b_nanos", s.t_b_nanos},
      {"s_sizes", s.s_sizes},
      {"scan_reads", s.scan_reads},
      {"joins", s.joins},
      {"rpr_calls", s.rpr_calls},
  };
  if (s.fallback_used) j["stats"]["fallback_reason"] = s.fallback_reason;
  if (with_trace) {
    const auto& t = o.trace;
    json hist = json::array();
    for (const auto& st : t.s_history) hist.push_back(set_to_json(st));
    j["trace"] = {
        {"s_history", std::move(hist)},
        {"x_trace", t.x_trace},
        {"y_trace", t.y_trace},
        {"k_set", set_to_json(t.k_set)},
        {"p_hat", t.p_hat},
        {"c", t.c},
        {"w", t.w},
        {"line16", t.line16},
        {"budget_hit", t.budget_hit},
        {"lemma1_violations", s.lemma1_violations},
        {"observation1_violations", s.observation1_violations},
        {"observation3_violations", s.observation3_violations},
    };
  }
  return j;
}

Outcome outcome_from_json(const json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("verdict")) throw InputError("result has no verdict");
  if (j.value("schema_version", 0) != kSchemaVersion) throw InputError("unsupported schema_version");
  Outcome o;
  const auto verdict = j["verdict"].get<std::string>();
  if (verdict == "hamiltonian") {
    if (!j.contains("cycle")) throw InputError("hamiltonian result without a cycle");
    o.cycle = HamCycle{vertices_from(j["cycle"], n, "cycle")};
  } else if (verdict == "not_hamiltonian") {
    if (!j.contains("certificate")) throw InputError("negative result without a certificate");
    o.certificate = certificate_from_json(j["certificate"], n);
  } else {
    throw InputError("unknown verdict '" + verdict + "'");
  }
  return o;
}

json recipe_to_json(const HnRecipe& r) {
  json patched = json::array();
  for (const auto& p : r.patched) patched.push_back({{"vertex", p.vertex}, {"added", p.added}});
  return {{"schema_version", kSchemaVersion}, {"n", r.n}, {"q", r.q}, {"k", r.k},
          {"patched", std::move(patched)}};
}

}  // namespace hamcert
