#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "limlaw/chain.hpp"
#include "limlaw/errors.hpp"

namespace limlaw {

std::string exact_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string decimal_string(const Rational& q) {
  mpf_class f(0, 512);
  f = q;
  char buffer[64];
  gmp_snprintf(buffer, sizeof buffer, "%.12Fg", f.get_mpf_t());
  return buffer;
}

std::string chain_to_json(const Chain& chain, const Distribution* limit) {
  validate(chain);
  nlohmann::ordered_json doc;
  doc["k"] = chain.k;
  doc["start"] = chain.start;
  doc["steps"] = "size n is reached after n-1 steps";
  auto states = nlohmann::ordered_json::array();
  for (const auto& s : chain.states) {
    nlohmann::ordered_json entry;
    entry["id"] = s.id;
    entry["representative"] = s.representative.shape.to_string();
    entry["accepting"] = s.accepting;
    entry["succ_plus"] = s.succ_plus;
    entry["succ_hat"] = s.succ_hat;
    if (!s.expanded) entry["expanded"] = false;
    states.push_back(std::move(entry));
  }
  doc["states"] = std::move(states);
  if (limit != nullptr) {
    auto values = nlohmann::ordered_json::array();
    for (const auto& p : *limit) {
      nlohmann::ordered_json entry;
      entry["exact"] = exact_string(p);
      entry["decimal"] = decimal_string(p);
      values.push_back(std::move(entry));
    }
    doc["limit"] = std::move(values);
  }
  return doc.dump(2) + "\n";
}

Chain chain_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("chain JSON: ") + e.what());
  }
  try {
    Chain chain;
    chain.k = doc.at("k").get<int>();
    chain.start = doc.at("start").get<int>();
    for (const auto& entry : doc.at("states")) {
      ChainState s;
      s.id = entry.at("id").get<int>();
      s.representative = ConvexLinearOrder{
          PartSequence::parse(entry.at("representative").get<std::string>())};
      s.accepting = entry.at("accepting").get<bool>();
      s.succ_plus = entry.at("succ_plus").get<int>();
      s.succ_hat = entry.at("succ_hat").get<int>();
      s.expanded = entry.value("expanded", true);
      chain.states.push_back(std::move(s));
    }
    validate(chain);
    return chain;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("chain JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("chain JSON: ") + e.what());
  }
}

std::string chain_to_dot(const Chain& chain) {
  validate(chain);
  std::ostringstream out;
  out << "digraph chain {\n";
  out << "  // k = " << chain.k << ", start = " << chain.start << "\n";
  for (const auto& s : chain.states) {
    out << "  s" << s.id << " [label=\"" << s.id << ": " << s.representative.shape.to_string()
        << (s.accepting ? " [acc]" : "") << (s.expanded ? "" : " ...") << "\"" << (s.accepting ? ", shape=doublecircle" : "")
        << "];\n";
  }
  for (const auto& s : chain.states) {
    out << "  s" << s.id << " -> s" << s.succ_plus << " [label=\"⊕• 1/2\"];\n";
    out << "  s" << s.id << " -> s" << s.succ_hat << " [label=\"^ 1/2\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace limlaw
