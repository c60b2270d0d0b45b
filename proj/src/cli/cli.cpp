#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "arboreal/classify.hpp"
#include "arboreal/conj_restricted.hpp"
#include "arboreal/oracle.hpp"

#ifndef ARBOREAL_VERSION
#define ARBOREAL_VERSION "0.0.0"
#endif

namespace arboreal::cli {

  namespace {
    using json = nlohmann::ordered_json;

    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct Input {
      std::string file;
      std::string text;
      FRSystem    sys;
      NodeNames   names;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw UsageError("cannot read " + path);
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    Input load(std::string const& path) {
      Input in;
      in.file  = path;
      in.text  = read_file(path);
      in.sys   = parse_system(in.text);
      in.names = node_names(in.sys);
      return in;
    }

    struct Outcome {
      int         code = 0;
      json        verdict;
      json        witness = json::object();
      std::string text;
    };

    std::string label(Input const& in, Element const& g) {
      return element_label(g, in.names);
    }

    std::vector<Letter> parse_letters(std::string const& v, std::size_t d) {
      std::vector<Letter> out;
      bool                separated = v.find_first_of(", ") != std::string::npos;
      if (separated || d > 10) {
        std::string tok;
        std::istringstream ss(v);
        while (std::getline(ss, tok, v.find(',') != std::string::npos ? ',' : ' ')) {
          if (tok.empty()) {
            continue;
          }
          std::size_t pos = 0;
          unsigned long x = 0;
          try {
            x = std::stoul(tok, &pos);
          } catch (std::exception const&) {
            pos = 0;
          }
          if (pos != tok.size()) {
            throw UsageError("bad letter '" + tok + "'");
          }
          out.push_back(static_cast<Letter>(x));
        }
      } else {
        for (char c : v) {
          if (c < '0' || c > '9') {
            throw UsageError(std::string("bad letter '") + c + "'");
          }
          out.push_back(static_cast<Letter>(c - '0'));
        }
      }
      for (auto x : out) {
        if (x >= d) {
          throw UsageError("letter " + std::to_string(x) + " is outside the alphabet");
        }
      }
      return out;
    }

    std::string letters_string(std::vector<Letter> const& v, std::size_t d) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (d > 10 && i > 0) {
          s += ',';
        }
        s += std::to_string(v[i]);
      }
      return s;
    }

    std::string pick_prefix(Input const& in, std::string base) {
      auto clash = [&](std::string const& p) {
        for (auto const& n : in.sys.names()) {
          if (n.size() > p.size() && n.compare(0, p.size(), p) == 0) {
            return true;
          }
        }
        return false;
      };
      while (clash(base)) {
        base += "_";
      }
      return base;
    }

    std::string with_inputs(Input const& in, std::string const& defs) {
      return "alphabet " + std::to_string(in.sys.degree()) + "\n"
             + print_definitions(in.sys, in.names) + defs;
    }

    // ------------------------------------------------------------- commands

    Outcome cmd_equal(Input const& in, std::string const& w1, std::string const& w2,
                      std::size_t cap) {
      Outcome o;
      auto    t = equal(in.sys.parse_word(w1), in.sys.parse_word(w2), cap);
      if (t == Truth::ExceededCap) {
        o.code    = 2;
        o.verdict = "unknown";
        o.text    = "unknown: equality budget exhausted\n";
      } else {
        bool eq   = t == Truth::True;
        o.code    = eq ? 0 : 1;
        o.verdict = eq;
        o.text    = eq ? "true\n" : "false\n";
      }
      return o;
    }

    Outcome cmd_act(Input const& in, std::string const& w, std::string const& v) {
      Outcome o;
      auto    d   = in.sys.degree();
      auto    img = act(in.sys.parse_word(w), parse_letters(v, d));
      o.verdict   = letters_string(img, d);
      o.text      = letters_string(img, d) + "\n";
      return o;
    }

    Outcome cmd_order(Input const& in, std::string const& w, bool assert_finite,
                      std::size_t cap) {
      Outcome o;
      auto    g = in.sys.parse_word(w);
      auto    r = order(g, cap);
      o.text    = r.str() + "\n";
      switch (r.kind) {
        case OrderResult::Kind::Finite:
          o.verdict = r.value;
          break;
        case OrderResult::Kind::Infinite: {
          o.verdict = "infinite";
          auto os   = orbit_signalizer(g, cap);
          json cyc  = json::array();
          for (auto v : r.cycle) {
            cyc.push_back(label(in, os.elements[v]));
          }
          o.witness["cycle"]  = cyc;
          o.witness["labels"] = r.labels;
          o.code              = assert_finite ? 1 : 0;
          break;
        }
        default:
          o.verdict          = "unknown";
          o.witness["reason"] = r.reason;
          o.text             = "unknown: " + r.reason + "\n";
          o.code             = 2;
      }
      return o;
    }

    Outcome cmd_classify(Input const& in, std::string const& w) {
      Outcome o;
      auto    c = polynomial_degree(in.sys.parse_word(w));
      o.verdict = c.str();
      if (!c.witness.empty()) {
        o.witness["detail"] = c.witness;
      }
      o.text = c.str() + "\n";
      o.code = c.kind == ActivityClass::Kind::Unknown ? 2 : 0;
      return o;
    }

    Outcome cmd_os(Input const& in, std::string const& w, std::size_t cap) {
      Outcome o;
      auto    os = orbit_signalizer(in.sys.parse_word(w), cap);
      if (!os.complete()) {
        o.code    = 2;
        o.verdict = "exceeded-cap";
        o.text    = "orbit-signalizer exceeds " + std::to_string(cap) + " elements\n";
        return o;
      }
      json els = json::array();
      for (auto const& e : os.elements) {
        els.push_back(label(in, e));
        o.text += label(in, e) + "\n";
      }
      o.verdict            = os.elements.size();
      o.witness["elements"] = els;
      return o;
    }

    Outcome cmd_nucleus(Input const& in, std::string const& w) {
      Outcome o;
      auto    r = nucleus(in.sys.parse_word(w));
      if (r.kind != NucleusReport::Kind::Contracting) {
        o.code              = 2;
        o.verdict           = "unknown";
        o.witness["reason"] = r.reason;
        o.text              = "unknown: " + r.reason + "\n";
        return o;
      }
      json els = json::array();
      for (auto const& e : r.nucleus) {
        els.push_back(label(in, e));
        o.text += label(in, e) + "\n";
      }
      o.verdict             = r.nucleus.size();
      o.witness["elements"] = els;
      return o;
    }

    Outcome cmd_graph(Input const& in, std::string const& kind, std::vector<std::string> const& words,
                      std::string const& dot_path, std::size_t cap) {
      Outcome     o;
      std::string dot;
      if (kind == "order") {
        if (words.size() != 1) {
          throw UsageError("graph order takes one word");
        }
        auto g = order_graph(in.sys.parse_word(words[0]), cap);
        if (!g) {
          o.code    = 2;
          o.verdict = "exceeded-cap";
          o.text    = "orbit-signalizer exceeds " + std::to_string(cap) + " elements\n";
          return o;
        }
        dot                  = emit_dot(*g, in.names);
        o.verdict            = g->elements.size();
      } else {
        if (words.size() != 2) {
          throw UsageError("graph conj takes two words");
        }
        auto g = conj_graph(in.sys.parse_word(words[0]), in.sys.parse_word(words[1]), {cap, false});
        if (g.status == ConjGraph::Status::Unknown) {
          o.code    = 2;
          o.verdict = "unknown";
          o.text    = "unknown: " + g.reason + "\n";
          return o;
        }
        dot       = emit_dot(g, in.names);
        o.verdict = g.vertices.size();
      }
      if (dot_path.empty()) {
        o.text = dot;
      } else {
        std::ofstream f(dot_path);
        if (!f) {
          throw UsageError("cannot write " + dot_path);
        }
        f << dot;
        o.text = "wrote " + dot_path + "\n";
      }
      return o;
    }

    struct ConjOpts {
      std::string group   = "aut";
      bool        emit    = false;
      std::size_t depth   = 10;
      std::string pairs_file;
      std::string policy = "least";
      std::size_t cap     = kDefaultOSCap;
    };

    void verified_or_fail(Outcome& o, bool ok, std::string const& what) {
      o.witness["verified_depth"] = ok;
      if (!ok) {
        o.code    = 2;
        o.verdict = "unknown";
        o.text    = "unknown: " + what + " failed verification\n";
      }
    }

    Outcome conj_aut_path(Input const& in, Element const& a, Element const& b,
                          ConjOpts const& opt, bool want_finite_state) {
      Outcome o;
      auto    dec = conjugate_in_aut(a, b, {opt.cap, false});
      if (dec.kind == ConjDecision::Kind::Unknown) {
        o.code    = 2;
        o.verdict = "unknown";
        o.text    = "unknown: " + dec.reason + "\n";
        return o;
      }
      if (dec.kind == ConjDecision::Kind::NotConjugate) {
        o.code    = 1;
        o.verdict = "not conjugate";
        o.witness["reason"] = dec.reason;
        if (dec.criteria_disagree) {
          o.witness["criteria_disagree"] = true;
        }
        o.text = "not conjugate\n";
        return o;
      }
      auto prefix = pick_prefix(in, "h");
      auto policy = opt.policy == "greatest" ? Policy::Greatest : Policy::Least;
      std::optional<ConjugatorFR> chosen;
      std::optional<Element>      finite;
      if (want_finite_state) {
        for (auto& h : all_basic_conjugators(dec.graph, 64, prefix)) {
          if (auto f = expand_to_finite_state(h, 20000)) {
            chosen = std::move(h);
            finite = f;
            break;
          }
        }
      }
      if (!chosen) {
        chosen = basic_conjugator(dec.graph, policy, prefix);
        finite = expand_to_finite_state(*chosen, 20000);
      }
      o.verdict = "conjugate";
      o.text    = "conjugate\n";
      verified_or_fail(o, verify_conjugator(chosen->element(), a, b, opt.depth), "conjugator");
      if (o.code != 0) {
        return o;
      }
      if (finite) {
        bool exact = equal(inverse(*finite) * a * *finite, b) == Truth::True;
        o.witness["finite_state"] = true;
        o.witness["exact"]        = exact;
        if (!exact) {
          o.code    = 2;
          o.verdict = "unknown";
          o.text    = "unknown: conjugator failed exact verification\n";
          return o;
        }
      } else {
        o.witness["finite_state"] = false;
        if (want_finite_state) {
          o.witness["note"] = "finite-state expansion not reached within the cap";
        }
      }
      auto defs            = print_definitions(chosen->system, in.names, prefix + "aux");
      o.witness["system"]  = defs;
      o.witness["root"]    = chosen->system.store()->symbol(chosen->root).name;
      if (opt.emit) {
        o.text += with_inputs(in, defs);
      }
      return o;
    }

    Outcome conj_simultaneous(Input const& in, Element const& a, Element const& b,
                              ConjOpts const& opt) {
      std::vector<Element> as{a}, bs{b};
      std::istringstream   lines(read_file(opt.pairs_file));
      std::string          line;
      while (std::getline(lines, line)) {
        if (auto h = line.find('#'); h != std::string::npos) {
          line.erase(h);
        }
        std::istringstream ws(line);
        std::string        w1, w2, extra;
        if (!(ws >> w1)) {
          continue;
        }
        if (!(ws >> w2) || (ws >> extra)) {
          throw UsageError("pairs file lines must hold exactly two words");
        }
        as.push_back(in.sys.parse_word(w1));
        bs.push_back(in.sys.parse_word(w2));
      }
      Outcome o;
      auto    prefix = pick_prefix(in, "h");
      auto    dec    = conjugate_in_aut_simultaneous(as, bs, opt.cap, prefix);
      o.witness["states"] = dec.states;
      if (dec.kind == SimultaneousDecision::Kind::Unknown) {
        o.code    = 2;
        o.verdict = "unknown";
        o.text    = "unknown: " + dec.reason + "\n";
        return o;
      }
      if (dec.kind == SimultaneousDecision::Kind::NotConjugate) {
        o.code    = 1;
        o.verdict = "not conjugate";
        o.text    = "not conjugate\n";
        return o;
      }
      o.verdict = "conjugate";
      o.text    = "conjugate\n";
      auto h    = dec.conjugator->element();
      bool ok   = true;
      for (std::size_t i = 0; i < as.size(); ++i) {
        ok = ok && verify_conjugator(h, as[i], bs[i], opt.depth);
      }
      verified_or_fail(o, ok, "conjugator");
      if (o.code != 0) {
        return o;
      }
      auto defs           = print_definitions(dec.conjugator->system, in.names, prefix + "aux");
      o.witness["system"] = defs;
      if (opt.emit) {
        o.text += with_inputs(in, defs);
      }
      return o;
    }

    Outcome conj_restricted_path(Input const& in, Element const& a, Element const& b,
                                 ConjOpts const& opt) {
      RestrictedDecision dec;
      if (opt.group == "pol-1") {
        dec = conjugate_in_pol_minus1(a, b);
      } else if (opt.group == "pol0") {
        dec = conjugate_in_pol0_cyclic(a, b);
      } else {
        dec = conjugate_in_pol_inf(a, b);
      }
      Outcome o;
      if (dec.kind == RestrictedDecision::Kind::Unknown) {
        o.code    = 2;
        o.verdict = "unknown";
        o.text    = "unknown: " + dec.reason + "\n";
        return o;
      }
      if (dec.kind == RestrictedDecision::Kind::NotConjugate) {
        o.code              = 1;
        o.verdict           = "not conjugate";
        o.witness["reason"] = dec.reason;
        o.text              = "not conjugate\n";
        return o;
      }
      o.verdict = "conjugate";
      o.text    = "conjugate\n";
      verified_or_fail(o, verify_conjugator(*dec.conjugator, a, b, opt.depth), "conjugator");
      if (o.code != 0) {
        return o;
      }
      bool finitary     = dec.cls == RestrictedDecision::Class::Finitary;
      o.witness["class"] = finitary ? "finitary" : "bounded";
      if (finitary) {
        o.witness["depth"] = dec.depth;
      }
      o.witness["rule"] = dec.rule;
      auto prefix       = pick_prefix(in, "h");
      auto sys          = node_system(a.store(), *dec.conjugator->node(), prefix);
      NodeNames names   = in.names;
      for (auto const& [n, nm] : node_names(sys)) {
        names.emplace(n, nm);
      }
      auto defs           = print_definitions(sys, names, prefix + "aux");
      o.witness["system"] = defs;
      if (opt.emit) {
        o.text += with_inputs(in, defs);
      }
      return o;
    }

    Outcome cmd_conjugate(Input const& in, std::string const& w1, std::string const& w2,
                          ConjOpts const& opt) {
      auto a = in.sys.parse_word(w1);
      auto b = in.sys.parse_word(w2);
      if (!opt.pairs_file.empty()) {
        if (opt.group != "aut") {
          throw UsageError("--simultaneous is only available with --group aut");
        }
        return conj_simultaneous(in, a, b, opt);
      }
      if (opt.group == "aut") {
        return conj_aut_path(in, a, b, opt, false);
      }
      if (opt.group == "fsg") {
        bool bounded = polynomial_degree(a).bounded() && polynomial_degree(b).bounded();
        if (!bounded) {
          auto oa = orbit_signalizer(a, opt.cap);
          auto ob = orbit_signalizer(b, opt.cap);
          bool contracting = nucleus(a).kind == NucleusReport::Kind::Contracting
                             && nucleus(b).kind == NucleusReport::Kind::Contracting;
          if (!(contracting && oa.complete() && ob.complete())) {
            Outcome o;
            o.code    = 2;
            o.verdict = "unknown";
            if (oa.complete() != ob.complete()) {
              o.text = "unknown: only one orbit-signalizer is finite within the cap, which "
                       "obstructs finite-state conjugacy if it persists\n";
            } else {
              o.text = "unknown: inputs are neither bounded nor contracting with finite "
                       "orbit-signalizers\n";
            }
            return o;
          }
        }
        auto o = conj_aut_path(in, a, b, opt, true);
        o.witness["basis"] = bounded ? "bounded" : "contracting";
        return o;
      }
      return conj_restricted_path(in, a, b, opt);
    }

    Outcome cmd_representative(Input const& in, std::string const& w, std::size_t depth) {
      Outcome o;
      auto    t = canonical_representative(in.sys.parse_word(w), depth);
      json    levels = json::array();
      for (std::size_t k = 1; k < t.levels.size(); ++k) {
        levels.push_back(t.levels[k]);
        o.text += "level " + std::to_string(k) + ":";
        for (auto v : t.levels[k]) {
          o.text += " " + std::to_string(v);
        }
        o.text += "\n";
      }
      o.verdict           = orbit_tree_code(t);
      o.witness["levels"] = levels;
      return o;
    }

    Outcome cmd_oracle(Input const& in, std::string const& kind,
                       std::vector<std::string> const& words, std::size_t depth) {
      Outcome o;
      if (kind == "orbit-tree") {
        if (words.size() != 1) {
          throw UsageError("oracle orbit-tree takes one word");
        }
        auto code = orbit_tree_code(in.sys.parse_word(words[0]), depth);
        o.verdict = code;
        o.text    = code + "\n";
      } else if (kind == "trunc-order") {
        if (words.size() != 1) {
          throw UsageError("oracle trunc-order takes one word");
        }
        auto v    = truncated_order(in.sys.parse_word(words[0]), depth);
        o.verdict = v;
        o.text    = std::to_string(v) + "\n";
      } else {
        if (words.size() != 3) {
          throw UsageError("oracle verify takes H A B");
        }
        bool ok = verify_conjugator(in.sys.parse_word(words[0]), in.sys.parse_word(words[1]),
                                    in.sys.parse_word(words[2]), depth);
        o.verdict = ok;
        o.text    = ok ? "true\n" : "false\n";
        o.code    = ok ? 0 : 1;
      }
      return o;
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision procedures for automorphisms of regular rooted trees", "arboreal"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print a JSON report");
    app.set_version_flag("--version", ARBOREAL_VERSION);

    std::string              file, w1, w2, vword, dot_path, kind;
    std::vector<std::string> words;
    std::size_t              cap   = kDefaultOSCap;
    std::size_t              depth = 10;
    bool                     assert_finite = false;
    ConjOpts                 copt;

    auto* parse = app.add_subcommand("parse", "Parse and print a system");
    parse->add_option("FILE", file)->required();

    auto* eq = app.add_subcommand("equal", "Decide equality of two words");
    eq->add_option("FILE", file)->required();
    eq->add_option("W1", w1)->required();
    eq->add_option("W2", w2)->required();
    eq->add_option("--cap", cap, "Pair budget")->default_val(kDefaultEqualityCap);

    auto* actc = app.add_subcommand("act", "Image of a vertex");
    actc->add_option("FILE", file)->required();
    actc->add_option("W", w1)->required();
    actc->add_option("V", vword)->required();

    auto* ord = app.add_subcommand("order", "Order of an element");
    ord->add_option("FILE", file)->required();
    ord->add_option("W", w1)->required();
    ord->add_flag("--assert-finite", assert_finite, "Exit 1 on infinite order");
    ord->add_option("--cap", cap, "Orbit-signalizer cap");

    auto* cls = app.add_subcommand("classify", "Activity growth class");
    cls->add_option("FILE", file)->required();
    cls->add_option("W", w1)->required();

    auto* os = app.add_subcommand("os", "Orbit-signalizer");
    os->add_option("FILE", file)->required();
    os->add_option("W", w1)->required();
    os->add_option("--cap", cap, "Orbit-signalizer cap");

    auto* nuc = app.add_subcommand("nucleus", "Nucleus of the cyclic group");
    nuc->add_option("FILE", file)->required();
    nuc->add_option("W", w1)->required();

    auto* graph = app.add_subcommand("graph", "Order or conjugator graph as DOT");
    graph->add_option("KIND", kind)->required()->check(CLI::IsMember({"order", "conj"}));
    graph->add_option("FILE", file)->required();
    graph->add_option("WORDS", words)->required()->expected(1, 2);
    graph->add_option("--dot", dot_path, "Output path (default: standard output)");
    graph->add_option("--cap", cap, "Orbit-signalizer cap");

    auto* conj = app.add_subcommand("conjugate", "Decide conjugacy");
    conj->add_option("FILE", file)->required();
    conj->add_option("W1", w1)->required();
    conj->add_option("W2", w2)->required();
    conj->add_option("--group", copt.group)
        ->check(CLI::IsMember({"aut", "fsg", "pol-1", "pol0", "polinf"}));
    conj->add_flag("--emit-conjugator", copt.emit, "Print the conjugator system");
    conj->add_option("--verify-depth", copt.depth, "Depth of the truncated check");
    conj->add_option("--simultaneous", copt.pairs_file, "File of further 'W1 W2' pairs");
    conj->add_option("--policy", copt.policy)->check(CLI::IsMember({"least", "greatest"}));
    conj->add_option("--cap", copt.cap, "Orbit-signalizer cap");

    auto* rep = app.add_subcommand("representative", "Canonical conjugacy representative");
    rep->add_option("FILE", file)->required();
    rep->add_option("W", w1)->required();
    rep->add_option("--depth", depth)->required();

    auto* orc = app.add_subcommand("oracle", "Truncated brute-force checks");
    orc->add_option("KIND", kind)
        ->required()
        ->check(CLI::IsMember({"orbit-tree", "trunc-order", "verify"}));
    orc->add_option("FILE", file)->required();
    orc->add_option("WORDS", words)->required()->expected(1, 3);
    orc->add_option("--depth", depth)->required();

    std::vector<char const*> argv;
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return 0;
    } catch (CLI::CallForVersion const&) {
      out << ARBOREAL_VERSION << "\n";
      return 0;
    } catch (CLI::ParseError const& e) {
      err << "arboreal: " << e.what() << "\n";
      return 3;
    }

    auto* sub = app.get_subcommands().front();
    auto  t0  = std::chrono::steady_clock::now();
    try {
      Input   in = load(file);
      Outcome o;
      std::vector<std::string> inputs;
      std::string const name = sub->get_name();
      if (name == "parse") {
        o.verdict = in.sys.size();
        o.text    = print_system(in.sys);
      } else if (name == "equal") {
        o      = cmd_equal(in, w1, w2, cap);
        inputs = {w1, w2};
      } else if (name == "act") {
        o      = cmd_act(in, w1, vword);
        inputs = {w1, vword};
      } else if (name == "order") {
        o      = cmd_order(in, w1, assert_finite, cap);
        inputs = {w1};
      } else if (name == "classify") {
        o      = cmd_classify(in, w1);
        inputs = {w1};
      } else if (name == "os") {
        o      = cmd_os(in, w1, cap);
        inputs = {w1};
      } else if (name == "nucleus") {
        o      = cmd_nucleus(in, w1);
        inputs = {w1};
      } else if (name == "graph") {
        o      = cmd_graph(in, kind, words, dot_path, cap);
        inputs = words;
      } else if (name == "conjugate") {
        o      = cmd_conjugate(in, w1, w2, copt);
        inputs = {w1, w2};
      } else if (name == "representative") {
        o      = cmd_representative(in, w1, depth);
        inputs = {w1};
      } else {
        o      = cmd_oracle(in, kind, words, depth);
        inputs = words;
      }
      if (as_json) {
        json report;
        report["command"] = name;
        report["inputs"]  = {{"file", in.file}, {"digest", digest(in.text)}, {"words", inputs}};
        report["verdict"] = o.verdict;
        report["exit"]    = o.code;
        report["witness"] = o.witness;
        report["caps"]    = {{"orbit_signalizer", name == "conjugate" ? copt.cap : cap},
                             {"states", kDefaultStateCap},
                             {"equality", kDefaultEqualityCap},
                             {"configurations", kDefaultConfigCap}};
        if (name == "conjugate") {
          report["caps"]["verify_depth"] = copt.depth;
          report["group"]                = copt.group;
        }
        report["version"] = ARBOREAL_VERSION;
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);
        report["timings"] = {{"total_ms", ms.count()}};
        out << report.dump(2) << "\n";
      } else {
        out << o.text;
      }
      return o.code;
    } catch (ParseError const& e) {
      err << file << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
      return 3;
    } catch (CapExceeded const& e) {
      err << "arboreal: cap exceeded: " << e.what() << "\n";
      return 2;
    } catch (std::exception const& e) {
      err << "arboreal: " << e.what() << "\n";
      return 3;
    }
  }

}  // namespace arboreal::cli
