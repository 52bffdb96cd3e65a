#include "torbun/cli.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) torbun::fail(torbun::ErrorCode::InvalidInput, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace torbun;
  CLI::App app{"Chow theory of toric variety bundles"};
  app.require_subcommand(1);

  cli::Options opts;
  std::string file;
  std::optional<std::string> v, left, right, sigma, tau, weight;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    sub->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "table"}));
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : cli::command_names()) {
    subs[name] = app.add_subcommand(name);
    common(subs[name]);
  }
  for (auto* sub : {subs["mw-product"], subs["subbundle"]}) {
    sub->add_option("--v", v, "displacement vector, comma separated");
    sub->add_option("--seed", opts.seed, "seed for the generic vector search");
  }
  subs["mw-product"]->add_flag("--cross-check", opts.cross_check, "recompute with a second generic vector");
  subs["mw-product"]->add_flag("--oracle", opts.oracle, "compare with the Chow ring oracle");
  subs["mw-product"]->add_option("--left", left, "name of the left weight");
  subs["mw-product"]->add_option("--right", right, "name of the right weight");
  subs["check-balancing"]->add_option("--weight", weight, "check only this weight");
  subs["equiv-mult"]->add_option("--sigma", sigma, "maximal cone label, e.g. 1,2");
  subs["equiv-mult"]->add_option("--tau", tau, "face label, e.g. 0 or 2");
  subs["residue"]->add_option("--tau", tau, "cone label");
  subs["presentation"]->add_flag("--equivariant", opts.equivariant, "keep the character terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("TORBUN_SEED")) {
    try {
      opts.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "torbun: error: TORBUN_SEED is not an unsigned integer\n";
      return 2;
    }
  }
  opts.v = v;
  opts.left = left;
  opts.right = right;
  opts.sigma = sigma;
  opts.tau = tau;
  opts.weight = weight;

  std::string command = app.get_subcommands().front()->get_name();
  try {
    auto result = cli::run_command(command, file, read_file(file), opts);
    std::cout << cli::render_document(result.document, opts.format);
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "torbun: error: " << e.what() << "\n";
    return cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "torbun: error: " << e.what() << "\n";
    return 2;
  }
}
