#include "reflen/commands.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "reflen/error.hpp"

namespace reflen {

namespace {

using nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

int parse_int(const std::string& s, const std::string& context) {
  const std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }) || t.size() > 6)
    throw ParseError("bad index '" + s + "' in " + context);
  return std::stoi(t);
}

GroupSpec spec_for(const RunConfig& config) {
  if (config.group.empty()) throw ParseError("no group given (use --group)");
  if (config.group.ends_with(".json")) {
    std::ifstream in(config.group);
    if (!in) throw ParseError("cannot read group file " + config.group);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(config.group + ": " + e.what());
    }
    return explicit_spec_from_json(j, config.budget);
  }
  return parse_group_spec(config.group, config.budget);
}

void cache_notes(const LoadedGroup& g, std::vector<std::string>& notes) {
  if (!g.cache_file) return;
  notes.push_back(std::string(g.cache_hit ? "cache hit: " : "cache stored: ") + g.cache_file->string());
}

std::optional<std::uint32_t> counterexample_index(const GroupSpec& spec, const GroupTable& t) {
  if (spec.kind != GroupSpec::Kind::Monomial) return std::nullopt;
  const auto g = counterexample(*spec.gmpn);
  if (!g) return std::nullopt;
  const auto idx = t.index_of(mono_to_matrix(*g));
  if (!idx) throw InvariantViolation(spec.name() + ": counterexample missing from the group table");
  return idx;
}

std::string analysis_text(const Analysis& a, const GroupSpec& spec) {
  const auto& t = a.group.table;
  const auto& o = a.orders;
  std::ostringstream out;
  out << "group    " << t.name() << "\norder    " << t.order() << "\ndim      " << t.dim() << "\nclasses  "
      << t.num_classes() << "\n\n";
  out << std::setw(6) << "class" << std::setw(10) << "rep" << std::setw(8) << "size" << std::setw(7) << "codim"
      << std::setw(8) << "length" << "  flags\n";
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    const auto& cl = t.classes()[c];
    out << std::setw(6) << c << std::setw(10) << cl.rep << std::setw(8) << cl.size << std::setw(7)
        << o.codim_by_class[c] << std::setw(8) << o.length_by_class[c] << "  ";
    std::vector<std::string> flags;
    if (cl.reflection) flags.emplace_back("reflection");
    if (o.atom_flags_perp[c]) flags.emplace_back("atom");
    if (o.length_by_class[c] != o.codim_by_class[c]) flags.emplace_back("length>codim");
    for (std::size_t i = 0; i < flags.size(); ++i) out << (i ? "," : "") << flags[i];
    out << '\n';
  }
  const auto& r = a.report;
  out << "\nlength != codim classes  " << r.length_ne_codim << "\nnonreflection atoms      "
      << r.nonreflection_atoms << "\nmax reflection length    " << r.max_length << "\ncoincide                 "
      << (r.coincide ? "yes" : "no") << '\n';
  if (const auto w = counterexample_index(spec, t)) {
    const auto c = t.class_of(*w);
    out << "counterexample           " << to_json(*counterexample(*spec.gmpn)).dump() << " in class " << c
        << " (length " << o.length_by_class[c] << ", codim " << o.codim_by_class[c] << ")\n";
  }
  return out.str();
}

ordered_json table1_json(const Table1Result& r) {
  ordered_json j;
  j["schema"] = "reflen.table1/1";
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"group", "G" + std::to_string(row.index)},
                    {"classes", row.classes},
                    {"length_ne_codim", row.length_ne_codim},
                    {"nonreflection_atoms", row.nonreflection_atoms},
                    {"dim", row.dim},
                    {"max_length", row.max_length}});
  j["rows"] = std::move(rows);
  ordered_json refused = ordered_json::array();
  for (const auto& [k, why] : r.refused) refused.push_back({{"group", "G" + std::to_string(k)}, {"reason", why}});
  j["refused"] = std::move(refused);
  return j;
}

}  // namespace

OutputFormat parse_output_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "dot") return OutputFormat::Dot;
  throw ParseError("unknown output format '" + s + "' (expected table, json or dot)");
}

PosetKind parse_poset_kind(const std::string& s) {
  if (s == "perp") return PosetKind::Perp;
  if (s == "ell") return PosetKind::Ell;
  if (s == "both") return PosetKind::Both;
  throw ParseError("unknown poset '" + s + "' (expected perp, ell or both)");
}

std::vector<int> parse_index_range(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::string lo = part, hi;
    if (auto dots = part.find(".."); dots != std::string::npos) {
      lo = part.substr(0, dots);
      hi = part.substr(dots + 2);
    } else if (auto dash = part.find('-'); dash != std::string::npos) {
      lo = part.substr(0, dash);
      hi = part.substr(dash + 1);
    }
    const int a = parse_int(lo, "range '" + s + "'");
    const int b = hi.empty() ? a : parse_int(hi, "range '" + s + "'");
    if (b < a) throw ParseError("empty range '" + part + "'");
    for (int k = a; k <= b; ++k) {
      if (!known_exceptional_order(k)) throw ParseError("no exceptional group G" + std::to_string(k) + " (expected 4..37)");
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
  }
  if (out.empty()) throw ParseError("empty index range");
  return out;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const GroupSpec& spec) {
  std::string stem = spec.name();
  std::replace_if(stem.begin(), stem.end(), [](char c) { return !std::isalnum(static_cast<unsigned char>(c)); }, '_');
  std::ostringstream name;
  name << stem << '-' << std::hex << std::setw(16) << std::setfill('0') << fnv1a(cache_key(spec)) << ".rflgt";
  return dir / name.str();
}

LoadedGroup load_group(const GroupSpec& spec, const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return {enumerate_group(spec), false, std::nullopt};
  const auto path = cache_path(*cache_dir, spec);
  const std::string key = cache_key(spec);
  if (auto cached = GroupTable::load(path, key)) return {std::move(*cached), true, path};
  auto table = enumerate_group(spec);
  std::filesystem::create_directories(*cache_dir);
  table.save(path, key);
  return {std::move(table), false, path};
}

Analysis analyze(const GroupSpec& spec, const std::optional<std::filesystem::path>& cache_dir) {
  Analysis a{load_group(spec, cache_dir), {}, {}, {}, {}};
  const auto& t = a.group.table;
  a.cac = cac_sweep(t);
  a.orders = compute_order_tables(t, a.cac);
  a.report = coincidence_report(t, a.orders);
  a.lemmas = verify_order_lemmas(t, a.cac, a.orders);
  if (!a.lemmas.ok()) throw InvariantViolation(t.name() + ": " + a.lemmas.violations.front());
  return a;
}

nlohmann::ordered_json analysis_json(const Analysis& a) {
  const auto& t = a.group.table;
  const auto& o = a.orders;
  ordered_json j;
  j["schema"] = "reflen.analysis/1";
  j["group"] = t.name();
  j["order"] = t.order();
  j["dim"] = t.dim();
  j["num_classes"] = t.num_classes();
  ordered_json classes = ordered_json::array();
  ordered_json witnesses = ordered_json::array();
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    const auto& cl = t.classes()[c];
    classes.push_back({{"rep", cl.rep},
                       {"size", cl.size},
                       {"codim", o.codim_by_class[c]},
                       {"length", o.length_by_class[c]},
                       {"reflection", cl.reflection},
                       {"atom_perp", o.atom_flags_perp[c] != 0}});
    if (o.length_by_class[c] != o.codim_by_class[c]) witnesses.push_back(c);
  }
  j["classes"] = std::move(classes);
  j["coincidence"] = {{"length_ne_codim", a.report.length_ne_codim},
                      {"nonreflection_atoms", a.report.nonreflection_atoms},
                      {"max_length", a.report.max_length},
                      {"coincide", a.report.coincide}};
  j["criteria"] = {{"length_equals_codim", a.lemmas.length_equals_codim},
                   {"atoms_length_equals_codim", a.lemmas.atoms_length_equals_codim},
                   {"atoms_are_reflections", a.lemmas.atoms_are_reflections},
                   {"every_element_descends", a.lemmas.every_element_descends}};
  j["witness_classes"] = std::move(witnesses);
  return j;
}

CommandOutput cmd_analyze(const RunConfig& config) {
  const auto spec = spec_for(config);
  if (config.output == OutputFormat::Dot) throw ParseError("analyze supports table or json output");
  const Analysis a = analyze(spec, config.cache_dir);
  CommandOutput out;
  cache_notes(a.group, out.notes);
  if (config.output == OutputFormat::Table) {
    out.text = analysis_text(a, spec);
    return out;
  }
  auto j = analysis_json(a);
  if (const auto w = counterexample_index(spec, a.group.table)) {
    const auto c = a.group.table.class_of(*w);
    j["counterexample"] = {{"element", to_json(*counterexample(*spec.gmpn))},
                           {"class", c},
                           {"length", a.orders.length_by_class[c]},
                           {"codim", a.orders.codim_by_class[c]}};
  }
  out.text = j.dump(2) + "\n";
  return out;
}

Table1Result table1(const std::vector<int>& indices, const RunConfig& config) {
  Table1Result r;
  for (int k : indices) {
    const auto order = known_exceptional_order(k);
    if (!order) throw ParseError("no exceptional group G" + std::to_string(k));
    if (*order > config.budget) {
      r.refused.emplace_back(k, "order " + std::to_string(*order) + " exceeds the budget of " +
                                    std::to_string(config.budget) + "; raise --budget to include it");
      continue;
    }
    const Analysis a = analyze(GroupSpec::exceptional(k, config.budget), config.cache_dir);
    r.rows.push_back({k, a.group.table.num_classes(), a.report.length_ne_codim, a.report.nonreflection_atoms,
                      a.group.table.dim(), a.report.max_length});
  }
  return r;
}

CommandOutput cmd_table1(const std::vector<int>& indices, const RunConfig& config) {
  if (config.output == OutputFormat::Dot) throw ParseError("table1 supports table or json output");
  const auto r = table1(indices, config);
  CommandOutput out;
  out.exit_code = r.refused.empty() ? 0 : 3;
  for (const auto& [k, why] : r.refused) out.notes.push_back("G" + std::to_string(k) + " refused: " + why);
  if (config.output == OutputFormat::Json) {
    out.text = table1_json(r).dump(2) + "\n";
    return out;
  }
  std::ostringstream s;
  s << std::setw(6) << "group" << std::setw(9) << "classes" << std::setw(13) << "len!=codim" << std::setw(14)
    << "nonref atoms" << std::setw(7) << "dim V" << std::setw(9) << "max len" << '\n';
  for (const auto& row : r.rows)
    s << std::setw(6) << row.index << std::setw(9) << row.classes << std::setw(13) << row.length_ne_codim
      << std::setw(14) << row.nonreflection_atoms << std::setw(7) << row.dim << std::setw(9) << row.max_length
      << '\n';
  for (const auto& [k, why] : r.refused) s << std::setw(6) << k << "  refused: " << why << '\n';
  out.text = s.str();
  return out;
}

CommandOutput cmd_poset(const RunConfig& config) {
  const auto spec = spec_for(config);
  const Analysis a = analyze(spec, config.cache_dir);
  CommandOutput out;
  cache_notes(a.group, out.notes);
  const auto& t = a.group.table;
  switch (config.output) {
    case OutputFormat::Dot:
      out.text = poset_dot(t, a.orders, config.poset);
      break;
    case OutputFormat::Json:
      out.text = poset_json(t, a.orders).dump(2) + "\n";
      break;
    case OutputFormat::Table: {
      std::ostringstream s;
      auto list = [&](const char* title, const std::vector<CoverEdge>& edges) {
        s << title << " covers (" << edges.size() << ")\n";
        for (const auto& e : edges)
          s << "  " << t.classes()[e.lower].rep << " < " << t.classes()[e.upper].rep << '\n';
      };
      if (config.poset != PosetKind::Ell) list("codimension order", a.orders.covers_perp);
      if (config.poset != PosetKind::Perp) list("length order", a.orders.covers_ell);
      out.text = s.str();
      break;
    }
  }
  return out;
}

CommandOutput cmd_cohom(const RunConfig& config) {
  const auto spec = spec_for(config);
  CommandOutput out;
  if (config.output == OutputFormat::Dot) throw ParseError("cohom supports table or json output");

  if (config.symbolic_atoms) {
    if (spec.kind != GroupSpec::Kind::Monomial) throw InvalidArgument("symbolic atoms are only available for G(m,p,n)");
    ordered_json j;
    j["schema"] = "reflen.cohom-families/1";
    j["group"] = spec.name();
    ordered_json fams = ordered_json::array();
    int max_degree = 0;
    for (const auto& f : gmpn_atom_families(*spec.gmpn)) {
      const int degree = f.kind == AtomKind::PConnected ? static_cast<int>(f.exponents.size()) : 1;
      max_degree = std::max(max_degree, degree);
      fams.push_back({{"kind", to_string(f.kind)}, {"exponents", f.exponents}, {"count", f.count}, {"degree", degree}});
    }
    j["families"] = std::move(fams);
    j["max_degree"] = max_degree;
    j["includes_degree_gt_one"] = max_degree > 1;
    if (config.output == OutputFormat::Json) {
      out.text = j.dump(2) + "\n";
    } else {
      std::ostringstream s;
      s << "group " << spec.name() << "\n";
      for (const auto& f : j["families"])
        s << "  " << f["kind"].get<std::string>() << " " << f["exponents"].dump() << " x" << f["count"]
          << "  degree " << f["degree"] << '\n';
      s << "max degree " << max_degree << '\n';
      out.text = s.str();
    }
    return out;
  }

  const Analysis a = analyze(spec, config.cache_dir);
  cache_notes(a.group, out.notes);
  const auto r = generator_set(a.group.table, a.orders.atom_flags_perp, config.generators, config.element_budget);
  if (config.output == OutputFormat::Json) {
    out.text = to_json(r, config.generators).dump(2) + "\n";
    return out;
  }
  std::ostringstream s;
  s << "group " << r.group << "\n";
  for (const auto& g : r.generators) {
    s << "  " << (config.generators == GeneratorMode::Element ? "element " + std::to_string(g.tag) + " " : "")
      << "class rep " << g.class_rep << "  degree " << g.degree << "  vol ";
    for (std::size_t i = 0; i < g.vol.size(); ++i) {
      s << (i ? " ^ " : "") << '(';
      for (std::size_t k = 0; k < g.vol[i].size(); ++k) s << (k ? ", " : "") << g.vol[i][k].to_string();
      s << ')';
    }
    s << '\n';
  }
  s << "max degree " << r.max_degree << "\nincludes degree > 1  " << (r.includes_degree_gt_one ? "yes" : "no")
    << '\n';
  out.text = s.str();
  return out;
}

}  // namespace reflen
