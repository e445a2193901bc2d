// Writes the small synthetic corpus shipped under data/fixture.

#include <filesystem>
#include <iostream>
#include <ostream>

#include "CLI11.hpp"
#include "fieldscope/io.hpp"
#include "fieldscope/synth.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  CLI::App app{"Generate the synthetic fixture corpus"};
  fs::path out;
  std::uint64_t seed = 2015;
  fieldscope::synth::HierarchyOptions o;
  o.domains = 2;
  o.disciplines_per_domain = 2;
  o.specialties_per_discipline = 2;
  o.docs_per_field = 25;
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--docs-per-field", o.docs_per_field)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto corpus = fieldscope::synth::planted_hierarchy(o, seed);
    fs::create_directories(out);
    fieldscope::io::write_atomic(out / "taxonomy.tsv", [&](std::ostream& os) {
      os << "# node_id\tname\tlevel\tparent_id\n";
      for (auto level : {fieldscope::Level::domain, fieldscope::Level::discipline, fieldscope::Level::specialty}) {
        for (const auto& id : corpus.taxonomy.nodes_at(level)) {
          const auto& n = corpus.taxonomy.node(id);
          os << n.id << '\t' << n.name << '\t' << fieldscope::level_name(n.level) << '\t' << n.parent << '\n';
        }
      }
    });
    fieldscope::io::write_atomic(out / "articles.jsonl", [&](std::ostream& os) {
      for (const auto& a : corpus.articles) {
        nlohmann::ordered_json j{{"id", a.id}, {"year", a.year}, {"title", a.title},
                                 {"abstract", a.abstract}, {"specialty", a.specialty}};
        os << j.dump() << '\n';
      }
    });
    fieldscope::io::write_atomic(out / "citations.tsv", [&](std::ostream& os) {
      os << "# citing_id\tcited_id\n";
      for (const auto& e : corpus.citations) os << e.citing << '\t' << e.cited << '\n';
    });
  } catch (const std::exception& e) {
    std::cerr << "fieldscope_fixture: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
