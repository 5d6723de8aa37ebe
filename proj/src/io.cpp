#include "so3five/io.hpp"

namespace so3five {

namespace {

Scalar tol_of(Mode m, double tolerance) {
  return m == Mode::exact ? Scalar::zero(Mode::exact)
                          : Scalar::floating(tolerance);
}

Json kvector_json(const KVector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json(v[i]));
  return arr;
}

Json tensor2_json(const Tensor2& t) {
  Json rows = Json::array();
  for (int i = 0; i < 5; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 5; ++j) row.push_back(scalar_to_json(t.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json condition_json(const ConditionResult& c) {
  Json j;
  j["holds"] = c.holds;
  j["residual"] = scalar_to_json(c.residual);
  return j;
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  return s.value();
}

Scalar scalar_from_json(const Json& j, Mode m) {
  if (j.is_number()) {
    if (m == Mode::exact)
      throw input_error("numeric literal in exact-mode input: " + j.dump() +
                        " (use the rational string grammar)");
    return Scalar::floating(j.get<double>());
  }
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>(), m);
    } catch (const parse_error& e) {
      throw input_error(std::string("bad scalar: ") + e.what());
    }
  }
  throw input_error("scalar must be a string or number, got " + j.dump());
}

StructureInput load_structure(const Json& j, double float_tolerance) {
  if (!j.is_object()) throw input_error("structure file must be a JSON object");
  std::string mode_s = j.value("scalar_mode", "exact");
  Mode m;
  if (mode_s == "exact") m = Mode::exact;
  else if (mode_s == "float") m = Mode::floating;
  else throw input_error("scalar_mode must be \"exact\" or \"float\"");
  Scalar tol = tol_of(m, float_tolerance);

  StructureInput in;
  in.mode = m;
  in.torsion = TorsionTensor(m);
  if (j.contains("torsion")) {
    if (!j["torsion"].is_array()) throw input_error("torsion must be an array");
    for (const auto& ent : j["torsion"]) {
      if (!ent.is_object() || !ent.contains("i") || !ent.contains("j") ||
          !ent.contains("k") || !ent.contains("value"))
        throw input_error("torsion entry needs i, j, k, value");
      int a = ent["i"].get<int>(), b = ent["j"].get<int>(), c = ent["k"].get<int>();
      if (!(1 <= a && a < b && b < c && c <= 5))
        throw input_error("torsion indices must be strictly increasing in 1..5");
      in.torsion.set(a, b, c, scalar_from_json(ent["value"], m));
    }
  }

  in.curvature = CurvatureMap(m);
  if (j.contains("curvature")) {
    const Json& c = j["curvature"];
    if (!c.is_object() || !c.contains("kind"))
      throw input_error("curvature needs a kind");
    std::string kind = c["kind"].get<std::string>();
    if (kind == "matrix") {
      const Json& rows = c.at("payload");
      if (!rows.is_array() || rows.size() != 10)
        throw input_error("curvature matrix payload must be 10x10");
      std::vector<std::vector<Scalar>> mat;
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != 10)
          throw input_error("curvature matrix payload must be 10x10");
        std::vector<Scalar> r;
        for (const auto& v : row) r.push_back(scalar_from_json(v, m));
        mat.push_back(std::move(r));
      }
      try {
        in.curvature = CurvatureMap::from_matrix(std::move(mat), tol);
      } catch (const precondition_error& e) {
        throw input_error(e.what());
      }
    } else if (kind == "rank_one_kappa3") {
      in.curvature =
          CurvatureMap::rank_one_kappa3(scalar_from_json(c.at("payload"), m));
    } else {
      throw input_error("curvature kind must be \"matrix\" or \"rank_one_kappa3\"");
    }
  }

  if (j.contains("frame")) {
    // components are understood in the given adapted frame; transport them
    // to the reference frame
    const Json& fr = j["frame"];
    if (!fr.is_array() || fr.size() != 5)
      throw input_error("frame must be 5 vectors");
    std::array<KVector, 5> vecs{KVector(1, m), KVector(1, m), KVector(1, m),
                                KVector(1, m), KVector(1, m)};
    for (int i = 0; i < 5; ++i) {
      if (!fr[i].is_array() || fr[i].size() != 5)
        throw input_error("frame vectors must have 5 components");
      for (int c = 0; c < 5; ++c) vecs[i][c] = scalar_from_json(fr[i][c], m);
    }
    Frame f(vecs);
    if (!is_adapted(f, tol)) throw input_error("frame override is not adapted");
    // torsion: T = sum T'_{ijk} f_i ^ f_j ^ f_k
    KVector t3(3, m);
    for (int p = 0; p < 10; ++p) {
      const auto& t = multi_index::tuple(3, p);
      Scalar v = in.torsion.form()[p];
      if (v.is_zero()) continue;
      t3 = t3 + wedge(wedge(f[t[0] - 1], f[t[1] - 1]), f[t[2] - 1]) * v;
    }
    in.torsion = TorsionTensor(t3);
    // curvature: K'(r,c) over f-bivectors -> reference components
    CurvatureMap knew(m);
    std::array<KVector, 10> fbiv{KVector(2, m), KVector(2, m), KVector(2, m),
                                 KVector(2, m), KVector(2, m), KVector(2, m),
                                 KVector(2, m), KVector(2, m), KVector(2, m),
                                 KVector(2, m)};
    for (int p = 0; p < 10; ++p) {
      const auto& t = multi_index::tuple(2, p);
      fbiv[p] = wedge(f[t[0] - 1], f[t[1] - 1]);
    }
    // K(x^y) for reference basis b_r = sum_p <b_r, f_p> K'(f_p) expressed back
    for (int r = 0; r < 10; ++r) {
      KVector br(2, m);
      br[r] = Scalar::one(m);
      KVector img(2, m);
      for (int p = 0; p < 10; ++p) {
        Scalar coeff = inner(br, fbiv[p]);
        if (coeff.is_zero()) continue;
        for (int q = 0; q < 10; ++q)
          img = img + fbiv[q] * (coeff * in.curvature.entry(p, q));
      }
      for (int c = 0; c < 10; ++c) knew.entry(r, c) = img[c];
    }
    in.curvature = knew;
    if ((in.curvature.range_residual() - tol).sign() > 0)
      throw input_error("curvature not Lambda^2_3-valued");
  }
  return in;
}

Json dump_structure(const StructureInput& in) {
  Json j;
  j["scalar_mode"] = in.mode == Mode::exact ? "exact" : "float";
  Json torsion = Json::array();
  for (int p = 0; p < 10; ++p) {
    const auto& t = multi_index::tuple(3, p);
    const Scalar& v = in.torsion.form()[p];
    if (v.is_zero()) continue;
    Json ent;
    ent["i"] = t[0];
    ent["j"] = t[1];
    ent["k"] = t[2];
    ent["value"] = scalar_to_json(v);
    torsion.push_back(ent);
  }
  j["torsion"] = torsion;
  Json rows = Json::array();
  for (int r = 0; r < 10; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 10; ++c)
      row.push_back(scalar_to_json(in.curvature.entry(r, c)));
    rows.push_back(row);
  }
  j["curvature"] = Json{{"kind", "matrix"}, {"payload", rows}};
  return j;
}

Json report_document(const StructureReport& rep, Mode mode, double tolerance) {
  Json j;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["scalar_mode"] = mode == Mode::exact ? "exact" : "float";
  if (mode == Mode::exact)
    j["tolerance"] = "0";
  else
    j["tolerance"] = tolerance;
  Json cond;
  cond["star_T_in_L23"] = condition_json(rep.star_t_in_l23);
  cond["S9_vanishes"] = condition_json(rep.s9_vanishes);
  cond["L27_vanishes"] = condition_json(rep.l27_vanishes);
  Json q;
  q["holds"] = rep.q_vanishes.holds;
  q["residual"] = scalar_to_json(rep.q_vanishes.residual);
  q["hypothesis_S9_zero"] = rep.q_vanishes.hypothesis_ok;
  if (rep.q_vanishes.witness) {
    Json w;
    Json sig = Json::array();
    for (const auto& y : rep.q_vanishes.witness->sigma_y)
      sig.push_back(scalar_to_json(y));
    w["sigma"] = sig;
    w["X"] = kvector_json(rep.q_vanishes.witness->x);
    w["value"] = scalar_to_json(rep.q_vanishes.witness->value);
    q["witness"] = w;
  } else {
    q["witness"] = nullptr;
  }
  cond["Q_vanishes"] = q;
  j["conditions"] = cond;
  j["normal"] = rep.normal;
  j["cr_integrable"] = rep.cr_integrable;
  if (rep.chi_killing_t)
    j["chi_killing_t"] = scalar_to_json(*rep.chi_killing_t);
  else
    j["chi_killing_t"] = "none";
  Json probe;
  probe["residual"] = scalar_to_json(rep.probe_residual);
  probe["agrees_with_verdict"] = rep.probe_agrees;
  j["probe"] = probe;
  return j;
}

Json decompose_document(const CurvatureMap& k, Mode mode, double tolerance) {
  Scalar tol = tol_of(mode, tolerance);
  CurvatureDecomposition d = psi_decompose(k, tol);
  CurvatureMap back = psi_inverse(d);
  Json j;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["scalar_mode"] = mode == Mode::exact ? "exact" : "float";
  Json dd;
  Json basis4 = Json::array();
  for (int p = 0; p < 5; ++p) {
    const auto& t = multi_index::tuple(4, p);
    basis4.push_back(std::to_string(t[0]) + std::to_string(t[1]) +
                     std::to_string(t[2]) + std::to_string(t[3]));
  }
  dd["A_basis"] = basis4;
  dd["A"] = kvector_json(d.alternation);
  dd["rho_minus"] = tensor2_json(d.rho_minus);
  dd["s"] = scalar_to_json(d.scalar_curv);
  dd["eta"] = tensor2_json(d.eta);
  j["decomposition"] = dd;
  j["reconstruction_residual"] = scalar_to_json((back - k).max_abs());
  return j;
}

StructureInput builtin_example(const std::string& name, const Scalar& t) {
  Mode m = t.mode();
  StructureInput in;
  in.mode = m;
  in.torsion = TorsionTensor(m);
  in.curvature = CurvatureMap(m);
  if (name == "flat") return in;
  if (name == "symmetric") {
    if (t.sign() == 0) throw input_error("symmetric example needs lambda != 0");
    in.curvature = CurvatureMap::projector_p(m, t);
    return in;
  }
  if (name == "so12") {
    if (t.is_zero()) throw input_error("so12 example needs t != 0");
    in.torsion.set(1, 2, 4, t);
    in.torsion.set(1, 3, 5, t + t);
    in.curvature = CurvatureMap::rank_one_kappa3(Scalar::integer(2, m) * t * t);
    return in;
  }
  throw input_error("unknown example '" + name +
                    "' (expected flat, symmetric, so12)");
}

}  // namespace so3five
