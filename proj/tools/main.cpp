#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace iwg;
using namespace iwg::cli;

namespace {

enum Exit { ok = 0, verification = 1, input = 2, precision = 3 };

void add_common(CLI::App* sub, Options& opt, std::string& format) {
  sub->add_option("--config", opt.config, "JSON configuration file");
  sub->add_option("--out", opt.out, "write the report here instead of stdout");
  sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--precision", opt.precision, "working precision");
  sub->add_option("--degree", opt.degree, "series degree");
  sub->add_option("--seed", opt.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa growth toolkit: formal groups, local points, Coleman matrices, Kobayashi ranks"};
  app.require_subcommand(1);
  Options opt;
  std::string format = "json";
  ColemanArgs cargs;

  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"honda-check", "logarithm", "local-points", "coleman", "kobayashi", "growth"}) {
    static const std::map<std::string, std::string> help{
        {"honda-check", "Honda congruence for log_A and ell, and the x_k denominator bound"},
        {"logarithm", "formal group law from the logarithms, integrality and group axioms"},
        {"local-points", "trace relations of the local point system at the logarithm level"},
        {"coleman", "identities and valuations of the logarithmic matrices H_n"},
        {"kobayashi", "Kobayashi ranks: definition against the analytic formula"},
        {"growth", "growth table for the v-primary Tate-Shafarevich group"}};
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_common(sub, opt, format);
    subs[name] = sub;
  }
  subs["coleman"]->add_option("--p", cargs.p, "odd prime");
  subs["coleman"]->add_option("--ap", cargs.ap, "a_p as an integer, or \"symbolic\"");
  subs["coleman"]->add_option("--nmax", cargs.nmax, "largest level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::input;
  }
  opt.format = format == "csv" ? Format::csv : Format::json;

  try {
    if (*subs["honda-check"]) return run_honda_check(opt);
    if (*subs["logarithm"]) return run_logarithm(opt);
    if (*subs["local-points"]) return run_local_points(opt);
    if (*subs["coleman"]) return run_coleman(opt, cargs);
    if (*subs["kobayashi"]) return run_kobayashi(opt);
    if (*subs["growth"]) return run_growth(opt);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return Exit::input;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return Exit::precision;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return Exit::verification;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return Exit::input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::verification;
  }
  return Exit::input;
}
