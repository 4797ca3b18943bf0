#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <braidmod/braidmod.hpp>

namespace bm = braidmod;
using bm::Json;

namespace {

Json read_json_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) bm::fail(bm::Err::MalformedToken, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    bm::fail(bm::Err::MalformedToken, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<int> parse_index_csv(const std::string& csv) {
  std::vector<int> out;
  std::string tok;
  std::istringstream in(csv);
  while (std::getline(in, tok, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      bm::fail(bm::Err::MalformedToken, "'" + tok + "' is not a strand index");
    }
  }
  if (out.empty()) bm::fail(bm::Err::MalformedToken, "empty index list");
  return out;
}

bm::Int parse_big(const std::string& s) {
  try {
    return bm::Int(s);
  } catch (const std::exception&) {
    bm::fail(bm::Err::MalformedToken, "'" + s + "' is not an integer");
  }
}

void emit(bool json, const Json& j, const std::string& text) {
  if (json)
    std::cout << j.dump() << "\n";
  else
    std::cout << text << "\n";
}

std::string classify_text(const bm::ThurstonClass3& cls) {
  if (auto* p = std::get_if<bm::Periodic>(&cls))
    return std::string("periodic circular=") + (p->circular ? "true" : "false") +
           " l=" + std::to_string(p->power) + " entropy=0 module=inf";
  if (auto* r = std::get_if<bm::ReducibleParabolic>(&cls))
    return "reducible_parabolic k=" + r->k.str() + " l=" + r->ell.str() +
           " entropy=0 module=inf";
  const auto& pa = std::get<bm::PseudoAnosov>(cls);
  return "pseudo_anosov trace=" + pa.trace.str() + " entropy=" + bm::fmt_entropy(pa.entropy) +
         " module=" + bm::fmt_module(pa.module);
}

Json classify_json(const bm::ThurstonClass3& cls) {
  Json j;
  if (auto* p = std::get_if<bm::Periodic>(&cls)) {
    j["class"] = "periodic";
    j["circular"] = p->circular;
    j["l"] = p->power;
    j["entropy"] = "0";
    j["module"] = "inf";
  } else if (auto* r = std::get_if<bm::ReducibleParabolic>(&cls)) {
    j["class"] = "reducible_parabolic";
    j["k"] = bm::json_int(r->k);
    j["l"] = bm::json_int(r->ell);
    j["entropy"] = "0";
    j["module"] = "inf";
  } else {
    const auto& pa = std::get<bm::PseudoAnosov>(cls);
    j["class"] = "pseudo_anosov";
    j["trace"] = bm::json_int(pa.trace);
    j["entropy"] = pa.entropy.value;
    j["module"] = pa.module.value;
    j["dilatation"] = pa.dilatation;
  }
  return j;
}

int run_selftest() {
  struct Check {
    const char* name;
    std::function<bool()> run;
  };
  using namespace bm;
  std::vector<Check> checks = {
      {"theta generators",
       [] {
         return theta(parse_braid("B3: 1")) == SL2Matrix(1, 1, 0, 1) &&
                theta(parse_braid("B3: 2")) == SL2Matrix(1, 0, -1, 1) &&
                theta(parse_braid("B3: 1 -2")) == SL2Matrix(2, 1, 1, 1);
       }},
      {"full twist is -I",
       [] { return theta(inverse_power(garside(3), 2)).is_minus_identity(); }},
      {"pseudo-Anosov example",
       [] {
         auto c = classify_3(parse_braid("B3: 1 -2"));
         auto* pa = std::get_if<PseudoAnosov>(&c);
         return pa && pa->trace == 3 && std::abs(pa->entropy.value - 0.9624236501192069) < 1e-15 &&
                std::abs(pa->module.value * pa->entropy.value - M_PI / 2) < 1e-12;
       }},
      {"parabolic example",
       [] {
         auto c = classify_3(parse_braid("B3: 1 1 1"));
         auto* rp = std::get_if<ReducibleParabolic>(&c);
         return rp && rp->k == 3 && rp->ell == 0;
       }},
      {"periodic example",
       [] {
         auto c = classify_3(parse_braid("B3: 1 2"));
         auto* p = std::get_if<Periodic>(&c);
         return p && p->circular && p->power == 1;
       }},
      {"strand deletion",
       [] {
         BraidWord two = delete_strands(inverse_power(garside(3), 2), {1, 2});
         return two.strands == 2 && two.letters == std::vector<int>{1, 1};
       }},
      {"linking tuple",
       [] {
         BraidWord b = compose(parse_braid("B3: 1 1"), inverse_power(garside(3), 2));
         return linking_number(b, 1, 2) == 2 && linking_number(b, 2, 3) == 1 &&
                linking_number(b, 1, 3) == 1;
       }},
      {"cabling example",
       [] {
         ComponentTree t;
         t.root.braid = parse_braid("B2: 1 1");
         Attachment att;
         att.orbit.positions = {2};
         att.child.braid = parse_braid("B3: 1 -2");
         t.root.attachments.push_back(att);
         BraidWord w = synthesize(t);
         if (to_text(w) != "B4: 1 2 3 3 2 1 2 -3") return false;
         BraidWord back = extract_component(w, StrandOrbit{{2, 3, 4}}, 1);
         return equal_3(back, parse_braid("B3: 1 -2"));
       }},
      {"commutator identity",
       [] {
         BraidWord b1 = parse_braid("B3: -2 1");
         BraidWord b2 = parse_braid("B3: 2 -1");
         BraidWord lhs = commutator(b1, b2);
         BraidWord rhs = compose(inverse_power(parse_braid("B3: 2"), -6),
                                 inverse_power(garside(3), 2));
         return equal_3(lhs, rhs) && theta(lhs) == SL2Matrix(-1, 0, -6, -1);
       }},
      {"search minimum",
       [] {
         auto r = min_entropy_search(2);
         return r.word && to_text(*r.word) == "B3: 1 -2" &&
                std::abs(r.entropy.value - 0.9624236501192069) < 1e-15;
       }},
      {"parabolic invariants",
       [] {
         return parabolic_invariant(SL2Matrix(1, 3, 0, 1)) == std::pair<int, Int>{1, Int(3)} &&
                parabolic_invariant(SL2Matrix(1, 0, -3, 1)) == std::pair<int, Int>{1, Int(3)} &&
                parabolic_invariant(SL2Matrix(-1, 2, 0, -1)) == std::pair<int, Int>{-1, Int(-2)};
       }},
      {"decompose recompose",
       [] {
         SL2Matrix m(2, 1, 1, 1);
         RLWord w = sl2_decompose(m);
         return recompose(w) == m && w.sign == 1 && w.factors.size() == 2;
       }},
      {"discriminant examples",
       [] {
         Cplx d1 = discriminant({Cplx(-1.0), Cplx(0.0)});  // z^2 - 1 -> 4
         Cplx d2 = discriminant({Cplx(0.0), Cplx(3.0), Cplx(-4.0)});  // roots 0,1,3 -> 36
         return std::abs(d1 - Cplx(4.0)) < 1e-9 && std::abs(d2 - Cplx(36.0)) < 1e-9;
       }},
      {"bundle projection",
       [] {
         BraidWord w = project_bundle(SL2Matrix(2, 1, 1, 1));
         return to_text(w) == "B3: 1 -2" && theta(project_bundle(-SL2Matrix())) ==
                                                -SL2Matrix();
       }},
  };
  int passed = 0, failed = 0;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception&) {
      ok = false;
    }
    std::cout << (ok ? "ok   " : "FAIL ") << c.name << "\n";
    (ok ? passed : failed) += 1;
  }
  std::cout << "passed=" << passed << " failed=" << failed << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact entropy, conformal module and Thurston type of braid conjugacy classes"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit JSON output");

  std::string braid_a, braid_b, file_path, keep_csv, orbit_csv;
  std::string mat[4];
  int strand_i = 0, strand_j = 0;
  long long cycle_k = 1, gl_n = 0, gl_d = 0;
  double gl_m = 0.0;
  int max_len = 6, pen_n = 0, pen_g = 0, pen_s = 0;
  int exit_code = 0;

  auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  {
    CLI::App* c = sub("classify", "Thurston type of a 3-strand conjugacy class");
    c->add_option("braid", braid_a, "braid word, e.g. \"B3: 1 -2\"")->required();
    c->callback([&] {
      bm::ThurstonClass3 cls = bm::classify_3(bm::parse_braid(braid_a));
      emit(json, classify_json(cls), classify_text(cls));
    });
  }
  {
    CLI::App* c = sub("entropy", "topological entropy of the class");
    c->add_option("braid", braid_a, "braid word on 2 or 3 strands")->required();
    c->callback([&] {
      bm::InvariantPair p = bm::invariants_3(bm::parse_braid(braid_a));
      emit(json, Json{{"entropy", bm::json_entropy(p.entropy)}}, bm::fmt_entropy(p.entropy));
    });
  }
  {
    CLI::App* c = sub("module", "conformal module of the class");
    c->add_option("braid", braid_a, "braid word on 2 or 3 strands")->required();
    c->callback([&] {
      bm::InvariantPair p = bm::invariants_3(bm::parse_braid(braid_a));
      emit(json, Json{{"module", bm::json_module(p.module)}}, bm::fmt_module(p.module));
    });
  }
  {
    CLI::App* c = sub("theta", "SL(2,Z) image of a 3-strand word");
    c->add_option("braid", braid_a, "braid word on 3 strands")->required();
    c->callback([&] {
      bm::SL2Matrix m = bm::theta(bm::parse_braid(braid_a));
      std::string text = "[[" + m.a.str() + "," + m.b.str() + "],[" + m.c.str() + "," +
                         m.d.str() + "]]";
      Json jm = Json::array({Json::array({bm::json_int(m.a), bm::json_int(m.b)}),
                             Json::array({bm::json_int(m.c), bm::json_int(m.d)})});
      emit(json, Json{{"matrix", jm}}, text);
    });
  }
  {
    CLI::App* c = sub("conjugate", "decide conjugacy of two 3-strand words");
    c->add_option("first", braid_a, "braid word")->required();
    c->add_option("second", braid_b, "braid word")->required();
    c->callback([&] {
      bool r = bm::conjugate_3(bm::parse_braid(braid_a), bm::parse_braid(braid_b));
      emit(json, Json{{"conjugate", r}}, r ? "true" : "false");
    });
  }
  {
    CLI::App* c = sub("trivial", "decide triviality of a 3-strand word");
    c->add_option("braid", braid_a, "braid word")->required();
    c->callback([&] {
      bool r = bm::is_trivial_3(bm::parse_braid(braid_a));
      emit(json, Json{{"trivial", r}}, r ? "true" : "false");
    });
  }
  {
    CLI::App* c = sub("link", "linking number of two fixed strands");
    c->add_option("braid", braid_a, "braid word")->required();
    c->add_option("i", strand_i, "first strand")->required();
    c->add_option("j", strand_j, "second strand")->required();
    c->callback([&] {
      long long v = bm::linking_number(bm::parse_braid(braid_a), strand_i, strand_j);
      emit(json, Json{{"linking", v}}, std::to_string(v));
    });
  }
  {
    CLI::App* c = sub("delete", "restrict to an invariant set of strands");
    c->add_option("braid", braid_a, "braid word")->required();
    c->add_option("--keep", keep_csv, "comma-separated strand indices")->required();
    c->callback([&] {
      std::vector<int> keep = parse_index_csv(keep_csv);
      bm::BraidWord w = bm::delete_strands(bm::parse_braid(braid_a),
                                           std::set<int>(keep.begin(), keep.end()));
      emit(json, Json{{"braid", bm::to_text(w)}}, bm::to_text(w));
    });
  }
  {
    CLI::App* c = sub("cable", "synthesize a reducible word from a component tree");
    c->add_option("file", file_path, "tree JSON file ('-' for stdin)")->required();
    c->callback([&] {
      bm::ComponentTree t = bm::tree_from_json(read_json_input(file_path));
      bm::BraidWord w = bm::synthesize(t);
      emit(json, Json{{"braid", bm::to_text(w)}}, bm::to_text(w));
    });
  }
  {
    CLI::App* c = sub("extract", "recover a cabled component");
    c->add_option("braid", braid_a, "composite braid word")->required();
    c->add_option("--orbit", orbit_csv, "comma-separated block positions")->required();
    c->add_option("-k,--cycle", cycle_k, "cycle length of the block")->required();
    c->callback([&] {
      bm::StrandOrbit orbit{parse_index_csv(orbit_csv)};
      bm::BraidWord w = bm::extract_component(bm::parse_braid(braid_a), orbit, cycle_k);
      emit(json, Json{{"braid", bm::to_text(w)}}, bm::to_text(w));
    });
  }
  {
    CLI::App* c = sub("reducible", "entropy and module of a component tree");
    c->add_option("file", file_path, "tree JSON file ('-' for stdin)")->required();
    c->callback([&] {
      bm::InvariantPair p = bm::reducible_invariants(bm::tree_from_json(read_json_input(file_path)));
      emit(json,
           Json{{"entropy", bm::json_entropy(p.entropy)}, {"module", bm::json_module(p.module)}},
           "entropy=" + bm::fmt_entropy(p.entropy) + " module=" + bm::fmt_module(p.module));
    });
  }
  {
    CLI::App* c = sub("project", "lift an SL(2,Z) matrix to a 3-strand word");
    c->add_option("a", mat[0])->required();
    c->add_option("b", mat[1])->required();
    c->add_option("c", mat[2])->required();
    c->add_option("d", mat[3])->required();
    c->callback([&] {
      bm::SL2Matrix m(parse_big(mat[0]), parse_big(mat[1]), parse_big(mat[2]), parse_big(mat[3]));
      bm::BraidWord w = bm::project_bundle(m);
      emit(json, Json{{"braid", bm::to_text(w)}}, bm::to_text(w));
    });
  }
  {
    CLI::App* c = sub("bundle", "classify a torus-bundle monodromy matrix");
    c->add_option("a", mat[0])->required();
    c->add_option("b", mat[1])->required();
    c->add_option("c", mat[2])->required();
    c->add_option("d", mat[3])->required();
    c->callback([&] {
      bm::SL2Matrix m(parse_big(mat[0]), parse_big(mat[1]), parse_big(mat[2]), parse_big(mat[3]));
      bm::BundleClass cls = bm::bundle_classify(m);
      Json j;
      std::string text;
      if (auto* p = std::get_if<bm::BundlePeriodic>(&cls)) {
        j = Json{{"class", "periodic"}, {"order", p->order}, {"entropy", "0"}, {"module", "inf"}};
        text = "periodic order=" + std::to_string(p->order) + " entropy=0 module=inf";
      } else if (auto* t = std::get_if<bm::BundleParabolicTwist>(&cls)) {
        j = Json{{"class", "parabolic_twist"},
                 {"sign", t->sign},
                 {"k", bm::json_int(t->k)},
                 {"entropy", "0"},
                 {"module", "inf"}};
        text = "parabolic_twist sign=" + std::to_string(t->sign) + " k=" + t->k.str() +
               " entropy=0 module=inf";
      } else {
        auto& an = std::get<bm::BundleAnosov>(cls);
        j = Json{{"class", "anosov"},
                 {"trace", bm::json_int(an.trace)},
                 {"entropy", an.entropy.value},
                 {"module", an.module.value}};
        text = "anosov trace=" + an.trace.str() + " entropy=" + bm::fmt_entropy(an.entropy) +
               " module=" + bm::fmt_module(an.module);
      }
      emit(json, j, text);
    });
  }
  {
    CLI::App* c = sub("disc-index", "winding number of a discriminant loop");
    c->add_option("file", file_path, "loop JSON file ('-' for stdin)")->required();
    c->callback([&] {
      long long idx = bm::winding_index(bm::polyloop_from_json(read_json_input(file_path)));
      emit(json, Json{{"index", idx}}, std::to_string(idx));
    });
  }
  {
    CLI::App* c = sub("check-gl", "Gorin-Lin reducibility threshold");
    c->add_option("n", gl_n, "strand count (prime)")->required();
    c->add_option("m", gl_m, "annulus conformal module")->required();
    c->add_option("d", gl_d, "discriminant index")->required();
    c->callback([&] {
      bm::GorinLinVerdict v = bm::gorin_lin_check(gl_n, gl_m, gl_d);
      const char* verdict = v.must_be_reducible ? "must_be_reducible" : "inconclusive";
      emit(json,
           Json{{"verdict", verdict}, {"witness", Json{{"threshold", v.threshold}}}},
           verdict);
    });
  }
  {
    CLI::App* c = sub("check-cor81", "commutator triviality criterion");
    c->add_option("first", braid_a, "braid word b1")->required();
    c->add_option("second", braid_b, "braid word b2")->required();
    c->callback([&] {
      bm::Cor81Verdict v = bm::corollary_8_1_check(bm::parse_braid(braid_a),
                                                   bm::parse_braid(braid_b));
      Json j;
      std::string text;
      switch (v.kind) {
        case bm::Cor81Verdict::Kind::MustBeTrivial:
          j = Json{{"verdict", "commutator_must_be_trivial"},
                   {"verified", v.verified},
                   {"witness", bm::to_text(v.commutator)}};
          text = "commutator_must_be_trivial verified=true";
          break;
        case bm::Cor81Verdict::Kind::HypothesisFails:
          j = Json{{"verdict", "hypothesis_fails"}, {"which", v.which}};
          text = "hypothesis_fails which=" + v.which;
          break;
        case bm::Cor81Verdict::Kind::Contradiction:
          j = Json{{"verdict", "contradiction"}, {"witness", bm::to_text(v.commutator)}};
          text = "CONTRADICTION";
          break;
      }
      emit(json, j, text);
    });
  }
  {
    CLI::App* c = sub("penner", "entropy lower bound of pseudo-Anosov maps");
    auto* on = c->add_option("--strands", pen_n, "braid strand count (>= 3)");
    auto* og = c->add_option("--genus", pen_g, "surface genus");
    auto* os = c->add_option("--punctures", pen_s, "puncture count");
    on->excludes(og);
    on->excludes(os);
    og->needs(os);
    os->needs(og);
    c->callback([&, on] {
      double v;
      if (*on)
        v = bm::penner_bound(pen_n);
      else if (c->count("--genus") != 0)
        v = bm::penner_bound_gs(pen_g, pen_s);
      else
        throw CLI::RequiredError("--strands or --genus/--punctures");
      emit(json, Json{{"bound", v}}, bm::fmt_double(v));
    });
  }
  {
    CLI::App* c = sub("search-min", "least positive entropy over short words");
    c->add_option("--max-len", max_len, "maximum word length (1..12)")->capture_default_str();
    c->callback([&] {
      bm::MinEntropySearch r = bm::min_entropy_search(max_len);
      if (!r.word) {
        emit(json, Json{{"word", nullptr}, {"entropy", "0"}}, "no_positive_entropy");
        return;
      }
      emit(json, Json{{"word", bm::to_text(*r.word)}, {"entropy", r.entropy.value}},
           bm::to_text(*r.word) + "  entropy=" + bm::fmt_entropy(r.entropy));
    });
  }
  {
    CLI::App* c = sub("selftest", "run the built-in oracle checks");
    c->callback([&] { exit_code = run_selftest(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const bm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
