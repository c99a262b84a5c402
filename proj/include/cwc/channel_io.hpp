#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwc/channel.hpp"
#include "cwc/codelab.hpp"

namespace cwc {

/// Channel file schema:
/// {"input_size": int, "legit": [[[row...],...] per state], "eaves": [...],
///  "pairing": "matched"|"product"}
inline CompoundWiretap parse_compound(const nlohmann::json& j) {
  if (!j.contains("input_size") || !j.contains("legit") || !j.contains("eaves") ||
      !j.contains("pairing"))
    throw std::invalid_argument(
        "channel file: required keys input_size, legit, eaves, pairing");
  const auto input_size = j.at("input_size").get<std::size_t>();
  const std::string pairing_str = j.at("pairing").get<std::string>();
  Pairing pairing;
  if (pairing_str == "matched")
    pairing = Pairing::Matched;
  else if (pairing_str == "product")
    pairing = Pairing::Product;
  else
    throw std::invalid_argument("channel file: pairing must be \"matched\" or \"product\"");

  auto parse_family = [&](const char* key) {
    std::vector<Channel> family;
    const auto& arr = j.at(key);
    for (std::size_t state = 0; state < arr.size(); ++state) {
      std::vector<std::vector<double>> rows;
      for (std::size_t r = 0; r < arr[state].size(); ++r)
        rows.push_back(arr[state][r].get<std::vector<double>>());
      if (rows.size() != input_size)
        throw std::invalid_argument(std::string("channel file: ") + key + "[" +
                                    std::to_string(state) + "] has " +
                                    std::to_string(rows.size()) + " rows, expected " +
                                    std::to_string(input_size));
      try {
        family.emplace_back(std::move(rows));
      } catch (const std::invalid_argument& e) {
        // Re-raise with the offending location; row identified per entry.
        for (std::size_t r = 0; r < arr[state].size(); ++r) {
          auto row = arr[state][r].get<std::vector<double>>();
          double sum = 0.0;
          bool bad = false;
          for (double v : row) {
            if (v < 0.0) bad = true;
            sum += v;
          }
          if (bad || std::abs(sum - 1.0) > kProbabilityTol)
            throw std::invalid_argument(std::string("channel file: ") + key + "[" +
                                        std::to_string(state) + "] row " + std::to_string(r) +
                                        " is not a probability distribution (sum " +
                                        std::to_string(sum) + ")");
        }
        throw std::invalid_argument(std::string("channel file: ") + key + ": " + e.what());
      }
    }
    return family;
  };

  return CompoundWiretap(parse_family("legit"), parse_family("eaves"), pairing);
}

inline CompoundWiretap load_compound(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open channel file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_compound(j);
}

inline nlohmann::json compound_to_json(const CompoundWiretap& w) {
  nlohmann::json j;
  j["input_size"] = w.input_size();
  j["pairing"] = w.pairing == Pairing::Matched ? "matched" : "product";
  for (const auto& ch : w.legit) j["legit"].push_back(ch.rows());
  for (const auto& ch : w.eaves) j["eaves"].push_back(ch.rows());
  return j;
}

inline nlohmann::json codebook_to_json(const Codebook& cb) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["n"] = cb.n;
  j["input_size"] = cb.input_size;
  j["message_count"] = cb.message_count;
  j["randomisation"] = cb.randomisation;
  j["seed"] = cb.seed;
  j["regime"] = regime_name(cb.regime);
  j["rates_formula_scaled"] = cb.rates_formula_scaled;
  j["message_rate"] = cb.message_rate;
  j["randomisation_rates"] = cb.randomisation_rates;
  j["words"] = cb.words;
  return j;
}

inline Codebook codebook_from_json(const nlohmann::json& j) {
  Codebook cb;
  cb.n = j.at("n").get<unsigned>();
  cb.input_size = j.at("input_size").get<std::size_t>();
  cb.message_count = j.at("message_count").get<std::size_t>();
  cb.randomisation = j.at("randomisation").get<std::vector<std::size_t>>();
  cb.seed = j.at("seed").get<std::uint64_t>();
  const std::string regime = j.at("regime").get<std::string>();
  cb.regime = regime == "csi" ? CodeRegime::Csi
              : regime == "no-csi" ? CodeRegime::NoCsi
                                   : CodeRegime::CsiT;
  cb.rates_formula_scaled = j.at("rates_formula_scaled").get<bool>();
  cb.message_rate = j.at("message_rate").get<double>();
  cb.randomisation_rates = j.at("randomisation_rates").get<std::vector<double>>();
  cb.words = j.at("words").get<std::vector<std::vector<std::vector<Seq>>>>();
  return cb;
}

inline Codebook load_codebook(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open codebook file: " + path);
  nlohmann::json j;
  in >> j;
  return codebook_from_json(j);
}

}  // namespace cwc
