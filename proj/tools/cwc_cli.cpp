#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cwc/adversary.hpp"
#include "cwc/capacity.hpp"
#include "cwc/channel_io.hpp"
#include "cwc/codelab.hpp"
#include "cwc/examples.hpp"

namespace {

void emit(const nlohmann::json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write report to " + out_path);
    out << report.dump(2) << "\n";
  }
}

nlohmann::json rate_report_json(const cwc::RateReport& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["raw_value"] = r.raw_value;
  j["argmax_input"] = r.argmax_input;
  j["method"] = r.method == cwc::SolveMethod::GridSearch    ? "grid"
                : r.method == cwc::SolveMethod::MultiStart ? "multistart"
                                                           : "exhaustive";
  for (const auto& term : r.per_state_terms)
    j["per_state"].push_back({{"legit_state", term.legit_state},
                              {"eaves_state", term.eaves_state},
                              {"i_legit", term.i_legit},
                              {"i_eaves", term.i_eaves}});
  return j;
}

int run_capacity(const std::string& channels_path, const std::string& regime, unsigned grid,
                 std::size_t aux_card, unsigned n, unsigned restarts, std::uint64_t seed,
                 const std::string& out_path) {
  const cwc::CompoundWiretap compound = cwc::load_compound(channels_path);
  nlohmann::json report;
  report["schema_version"] = 1;
  report["library_version"] = cwc::kLibraryVersion;
  const std::size_t resolved_aux = aux_card == 0 ? compound.input_size() + 1 : aux_card;
  report["config"] = {{"channels", channels_path}, {"regime", regime},   {"grid", grid},
                      {"aux_cardinality", resolved_aux}, {"n", n},
                      {"restarts", restarts},       {"seed", seed}};
  if (regime == "csi") {
    report["rate"] = rate_report_json(cwc::csi_rate_no_prefix(compound, grid));
  } else if (regime == "csi-prefix") {
    report["rate"] = rate_report_json(cwc::csi_rate_with_prefix(compound, resolved_aux, restarts, seed));
  } else if (regime == "no-csi") {
    report["rate"] = rate_report_json(cwc::no_csi_lower(compound, grid));
  } else if (regime == "csi-t") {
    report["rate"] = rate_report_json(cwc::csi_t_lower(compound, grid));
  } else if (regime == "degraded") {
    report["rate"] = rate_report_json(cwc::degraded_capacity(compound, grid));
  } else if (regime == "multiletter") {
    const auto ladder = cwc::multiletter_ladder(compound, n, resolved_aux, restarts, seed);
    report["ladder"] = ladder.a;
    report["rate"] = {{"value", ladder.a.back() / static_cast<double>(n)}};
  } else {
    throw std::invalid_argument("capacity: unknown regime " + regime);
  }
  emit(report, out_path);
  return 0;
}

int run_simulate(const std::string& channels_path, const std::string& regime_str, unsigned n,
                 double delta, double tau, std::uint64_t seed, std::size_t override_j,
                 std::size_t override_l, double expurgate_eta, const std::string& out_path,
                 const std::string& csv_path, const std::string& codebook_path) {
  const cwc::CompoundWiretap compound = cwc::load_compound(channels_path);
  cwc::CodeRegime regime;
  if (regime_str == "csi")
    regime = cwc::CodeRegime::Csi;
  else if (regime_str == "no-csi")
    regime = cwc::CodeRegime::NoCsi;
  else if (regime_str == "csi-t")
    regime = cwc::CodeRegime::CsiT;
  else
    throw std::invalid_argument("simulate: unknown regime " + regime_str);

  const cwc::TypicalityParams params(delta, n);
  // Uniform inputs keep the scenario fully determined by the channel file.
  std::vector<cwc::Distribution> inputs(compound.num_legit(),
                                        cwc::Distribution::uniform(compound.input_size()));
  const cwc::Codebook codebook =
      cwc::sample_codebook(compound, inputs, params, tau, seed, regime, override_j, override_l);
  const cwc::DecoderSets decoder = cwc::build_decoder(codebook, compound.legit, params);
  const cwc::ErrorReport errors = cwc::evaluate_error(codebook, decoder, compound.legit);
  const cwc::LeakageReport leakage = cwc::evaluate_leakage(codebook, compound.eaves);

  nlohmann::json report;
  report["schema_version"] = 1;
  report["library_version"] = cwc::kLibraryVersion;
  report["config"] = {{"channels", channels_path},
                      {"regime", regime_str},
                      {"n", n},
                      {"delta", delta},
                      {"tau", tau},
                      {"seed", seed},
                      {"override_J", override_j},
                      {"override_L", override_l},
                      {"expurgate_eta", expurgate_eta}};
  report["codebook"] = {{"message_count", codebook.message_count},
                        {"randomisation", codebook.randomisation},
                        {"message_rate", codebook.message_rate},
                        {"randomisation_rates", codebook.randomisation_rates},
                        {"rates_formula_scaled", codebook.rates_formula_scaled}};
  report["avg_error"] = errors.avg_error;
  report["per_message_error"] = errors.per_message_error;
  report["leakage_bits"] = leakage.leakage_bits;
  report["max_tv"] = leakage.max_tv;
  if (expurgate_eta > 0.0) {
    const auto ex = cwc::expurgate(codebook, decoder, compound.legit, expurgate_eta);
    report["expurgation"] = {{"kept", ex.kept},
                             {"removed_fraction", ex.removed_fraction},
                             {"max_error", ex.max_error},
                             {"empty", ex.empty}};
  }
  emit(report, out_path);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot write csv to " + csv_path);
    csv << "state,avg_error,leakage_bits,max_tv\n";
    for (std::size_t t = 0; t < errors.avg_error.size(); ++t)
      csv << t << "," << errors.avg_error[t] << "," << leakage.leakage_bits[t] << ","
          << leakage.max_tv[t] << "\n";
  }
  if (!codebook_path.empty()) {
    std::ofstream out(codebook_path);
    if (!out) throw std::invalid_argument("cannot write codebook to " + codebook_path);
    out << cwc::codebook_to_json(codebook).dump(2) << "\n";
  }
  return 0;
}

int run_attack(const std::string& channels_path, const std::string& codebook_path,
               std::size_t state, const std::string& out_path) {
  const cwc::CompoundWiretap compound = cwc::load_compound(channels_path);
  const cwc::Codebook codebook = cwc::load_codebook(codebook_path);
  if (state >= compound.num_eaves())
    throw std::invalid_argument("attack: state index out of range");
  const cwc::Channel& eaves = compound.eaves[state];
  const auto decoding = cwc::best_decoding_attack(codebook, eaves, state);

  nlohmann::json report;
  report["schema_version"] = 1;
  report["library_version"] = cwc::kLibraryVersion;
  report["config"] = {
      {"channels", channels_path}, {"codebook", codebook_path}, {"state", state}};
  report["decoding_attack"] = {{"avg_error", decoding.avg_error},
                               {"lower_bound", decoding.pinsker_lower_bound},
                               {"measured_leakage", decoding.epsilon_used}};
  if (codebook.message_count >= 2) {
    const auto ident = cwc::identification_attack(codebook, eaves, state);
    report["identification_attack"] = {{"g", ident.g},
                                       {"average", ident.average},
                                       {"lower_bound", ident.pinsker_lower_bound},
                                       {"measured_leakage", ident.epsilon_used}};
  }
  emit(report, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compound wiretap channel toolkit: capacity solvers, random-coding simulation, "
               "eavesdropper attack evaluation"};
  app.require_subcommand(1);

  std::string channels, out_path, csv_path, codebook_path, regime;
  unsigned grid = 1000, n = 2, restarts = 16;
  std::size_t aux_card = 0, state = 0, override_j = 0, override_l = 0;
  std::uint64_t seed = 0;
  double delta = 0.125, tau = 0.1, expurgate_eta = 0.0;

  auto* cap = app.add_subcommand("capacity", "Rate and capacity computations");
  cap->add_option("--channels", channels, "channel family JSON file")->required();
  cap->add_option("--regime", regime,
                  "csi | csi-prefix | no-csi | csi-t | degraded | multiletter")
      ->required();
  cap->add_option("--grid", grid, "simplex grid resolution");
  cap->add_option("--aux-card", aux_card, "auxiliary alphabet size (0: input size + 1)");
  cap->add_option("--n", n, "blocklength for the multiletter ladder");
  cap->add_option("--restarts", restarts, "random restarts for non-convex searches");
  cap->add_option("--seed", seed, "rng seed");
  cap->add_option("--out", out_path, "report path (default: stdout)");

  auto* sim = app.add_subcommand(
      "simulate",
      "Random-coding construction with exact error and leakage evaluation. "
      "CSV columns: state, avg_error, leakage_bits, max_tv.");
  sim->add_option("--channels", channels, "channel family JSON file")->required();
  sim->add_option("--regime", regime, "csi | no-csi | csi-t")->required();
  sim->add_option("--n", n, "blocklength")->required();
  sim->add_option("--delta", delta, "typicality tolerance");
  sim->add_option("--tau", tau, "rate backoff");
  sim->add_option("--seed", seed, "rng seed");
  sim->add_option("--override-J", override_j, "explicit message count");
  sim->add_option("--override-L", override_l, "explicit randomisation count");
  sim->add_option("--expurgate-eta", expurgate_eta, "run expurgation at threshold sqrt(eta)");
  sim->add_option("--out", out_path, "report path (default: stdout)");
  sim->add_option("--csv", csv_path, "per-state CSV path");
  sim->add_option("--save-codebook", codebook_path, "codebook JSON path for later attacks");

  auto* atk = app.add_subcommand("attack", "Eavesdropper decoding and identification attacks");
  atk->add_option("--channels", channels, "channel family JSON file")->required();
  atk->add_option("--codebook", codebook_path, "codebook JSON from simulate")->required();
  atk->add_option("--state", state, "eavesdropper state index");
  atk->add_option("--out", out_path, "report path (default: stdout)");

  double eta1 = 0.01, tau1 = 0.05, tau_hat = 0.45, nu = 0.01;
  auto* ex1 = app.add_subcommand("example1", "Two-state scenario: messages pass, pairs cannot");
  ex1->add_option("--eta", eta1, "crossover of the strong legitimate channel");
  ex1->add_option("--tau", tau1, "extra crossover to the strong eavesdropper");
  ex1->add_option("--tau-hat", tau_hat, "extra crossover to the weak legitimate channel");
  ex1->add_option("--nu", nu, "rate backoff");
  ex1->add_option("--grid", grid, "input grid resolution");
  ex1->add_option("--out", out_path, "report path (default: stdout)");

  double eta2 = 0.1, tau2 = 0.1;
  unsigned t_points = 21;
  auto* ex2 = app.add_subcommand(
      "example2", "Convex family: positive per-state rate, zero shared-input rate");
  ex2->add_option("--eta", eta2, "base crossover");
  ex2->add_option("--tau", tau2, "degradation crossover");
  ex2->add_option("--t-points", t_points, "state grid size");
  ex2->add_option("--grid", grid, "input grid resolution");
  ex2->add_option("--aux-card", aux_card, "auxiliary alphabet size (0: input size + 1)");
  ex2->add_option("--restarts", restarts, "random restarts");
  ex2->add_option("--seed", seed, "rng seed");
  ex2->add_option("--out", out_path, "report path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cap->parsed())
      return run_capacity(channels, regime, grid, aux_card, n, restarts, seed, out_path);
    if (sim->parsed())
      return run_simulate(channels, regime, n, delta, tau, seed, override_j, override_l,
                          expurgate_eta, out_path, csv_path, codebook_path);
    if (atk->parsed()) return run_attack(channels, codebook_path, state, out_path);
    if (ex1->parsed()) {
      emit(cwc::run_example1(eta1, tau1, tau_hat, nu, grid), out_path);
      return 0;
    }
    if (ex2->parsed()) {
      emit(cwc::run_example2(eta2, tau2, t_points, grid, aux_card == 0 ? 3 : aux_card, restarts,
                             seed),
           out_path);
      return 0;
    }
  } catch (const cwc::resource_error& e) {
    std::cerr << "resource refusal: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
