#pragma once

#include "forestcalc/accessibility.hpp"
#include "forestcalc/matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace forestcalc {

using Json = nlohmann::ordered_json;

// {order, labels, entries: [["p/q",...]], decimal: [[0.32,...]]}
template <class S>
Json matrix_json(const Matrix<S>& m, const std::vector<std::string>& labels) {
  Json j;
  j["order"] = m.order();
  j["labels"] = labels;
  Json entries = Json::array();
  Json decimal = Json::array();
  for (int i = 0; i < m.order(); ++i) {
    Json erow = Json::array();
    Json drow = Json::array();
    for (int c = 0; c < m.order(); ++c) {
      erow.push_back(scalar_traits<S>::to_string(m(i, c)));
      drow.push_back(scalar_traits<S>::to_double(m(i, c)));
    }
    entries.push_back(std::move(erow));
    decimal.push_back(std::move(drow));
  }
  j["entries"] = std::move(entries);
  j["decimal"] = std::move(decimal);
  return j;
}

// Decimal form with a label header row and one label column.
template <class S>
std::string matrix_csv(const Matrix<S>& m, const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) {
    out += ',';
    out += l;
  }
  out += '\n';
  for (int i = 0; i < m.order(); ++i) {
    out += labels[i];
    for (int c = 0; c < m.order(); ++c) {
      out += ',';
      out += scalar_traits<double>::to_string(scalar_traits<S>::to_double(m(i, c)));
    }
    out += '\n';
  }
  return out;
}

template <class S>
Json axiom_report_json(const AxiomReport<S>& report, const std::vector<std::string>& labels) {
  Json arr = Json::array();
  for (const auto& r : report.records) {
    Json rec;
    rec["condition"] = r.condition;
    rec["matrix"] = r.matrix;
    rec["item"] = r.item;
    rec["strict"] = r.strict;
    rec["verdict"] = r.passed ? "PASS" : "FAIL";
    if (!r.passed) {
      Json witness;
      Json vs = Json::array();
      for (int v : r.witness_vertices) vs.push_back(labels[v]);
      witness["vertices"] = std::move(vs);
      Json vals = Json::array();
      for (const S& x : r.witness_values) vals.push_back(scalar_traits<S>::to_string(x));
      witness["values"] = std::move(vals);
      rec["witness"] = std::move(witness);
    }
    arr.push_back(std::move(rec));
  }
  return arr;
}

inline Json penrose_json(const PenroseFlags& f) {
  return Json{{"1", f.c1}, {"2", f.c2}, {"3", f.c3}, {"4", f.c4}, {"5", f.c5}};
}

}  // namespace forestcalc
