#include "bbmc/published.hpp"

#include <stdexcept>
#include <utility>

namespace bbmc::published {
namespace {

using Column = std::pair<const char*, std::vector<Cell>>;

std::vector<Row> build(const std::vector<std::size_t>& ms, const std::vector<Column>& columns) {
  std::vector<Row> rows(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    rows[i].m = ms[i];
    for (const auto& [name, cells] : columns) rows[i].cells[name] = cells.at(i);
  }
  return rows;
}

// Column where every row shares one standard error.
std::vector<Cell> same_se(std::vector<double> values, double se) {
  std::vector<Cell> out;
  for (double v : values) out.push_back({v, se});
  return out;
}

const std::vector<std::size_t> kTable1M{1, 2, 4, 16, 64, 256, 1024};
const std::vector<std::size_t> kTable2M{1, 2, 4, 8, 16, 64, 256, 1024};
const std::vector<std::size_t> kTable3M{1, 8, 16, 32, 64, 1024};
const std::vector<std::size_t> kTable4M{1, 2, 4, 8, 16, 32, 64, 1024};

std::vector<Experiment> make_table1() {
  Experiment one{"table1a", "One asset down-and-out call", 8.794, 400000,
                 build(kTable1M, {{"q", same_se({8.79, 8.80, 8.80, 8.79, 8.80, 8.80, 8.80}, 0.02)},
                                  {"q_s", same_se({10.91, 10.66, 10.32, 9.74, 9.33, 9.08, 8.94}, 0.02)}})};
  Experiment two{"table1b", "Two asset down-and-out call, barrier on asset 2", 8.256, 800000,
                 build(kTable1M, {{"q", same_se({8.26, 8.26, 8.27, 8.27, 8.28, 8.28, 8.28}, 0.02)},
                                  {"q_s", {{14.93, 0.03}, {13.62, 0.03}, {12.35, 0.03}, {10.52, 0.02},
                                           {9.47, 0.02}, {8.90, 0.02}, {8.59, 0.02}}}})};
  return {one, two};
}

std::vector<Experiment> make_table2() {
  return {{"table2", "Double knock-out call on a single asset", 1.793, 400000,
           build(kTable2M,
                 {{"q_upper", same_se({3.01, 2.21, 1.84, 1.79, 1.78, 1.78, 1.78, 1.78}, 0.01)},
                  {"q_indep", same_se({2.41, 1.89, 1.79, 1.79, 1.78, 1.78, 1.78, 1.78}, 0.01)},
                  {"q_lower", same_se({1.11, 1.72, 1.78, 1.79, 1.78, 1.78, 1.78, 1.78}, 0.01)},
                  {"q_s", {{12.23, 0.04}, {9.60, 0.04}, {7.41, 0.03}, {5.73, 0.03}, {4.50, 0.02},
                           {3.06, 0.02}, {2.40, 0.02}, {2.08, 0.02}}},
                  {"q1", {{1.76, 0.66}, {1.80, 0.09}, {1.79, 0.01}, {1.79, 0.01}, {1.78, 0.01},
                          {1.78, 0.01}, {1.78, 0.01}, {1.78, 0.01}}},
                  {"q0", {{2.06, 0.96}, {1.97, 0.26}, {1.81, 0.04}, {1.79, 0.01}, {1.78, 0.01},
                          {1.78, 0.01}, {1.78, 0.01}, {1.78, 0.01}}}})}};
}

std::vector<Experiment> make_table3() {
  const char* title = "Two asset down-and-out call, barriers on both assets";
  Experiment rho0{"table3_rho0", std::string(title) + ", rho = 0", 3.649, 100000,
                  build(kTable3M,
                        {{"q_upper", {{5.02, 0.03}, {3.78, 0.04}, {3.70, 0.04}, {3.66, 0.04}, {3.65, 0.04}, {3.64, 0.04}}},
                         {"q_indep", {{3.65, 0.03}, {3.66, 0.04}, {3.66, 0.04}, {3.65, 0.04}, {3.65, 0.04}, {3.64, 0.04}}},
                         {"q_lower", {{2.27, 0.02}, {3.62, 0.04}, {3.65, 0.04}, {3.65, 0.04}, {3.65, 0.04}, {3.64, 0.04}}},
                         {"q_s", {{11.76, 0.07}, {6.84, 0.06}, {5.92, 0.05}, {5.27, 0.05}, {4.81, 0.05}, {3.93, 0.05}}},
                         {"q0", {{3.64, 1.41}, {3.70, 0.12}, {3.67, 0.06}, {3.65, 0.05}, {3.65, 0.04}, {3.64, 0.04}}}})};
  Experiment rho05{"table3_rho0.5", std::string(title) + ", rho = 0.5", 6.527, 100000,
                   build(kTable3M,
                         {{"q_upper", {{7.78, 0.05}, {6.71, 0.06}, {6.61, 0.06}, {6.57, 0.06}, {6.55, 0.06}, {6.54, 0.06}}},
                          {"q_indep", {{5.84, 0.04}, {6.48, 0.05}, {6.53, 0.06}, {6.54, 0.06}, {6.54, 0.06}, {6.54, 0.06}}},
                          {"q_lower", {{4.22, 0.04}, {6.41, 0.05}, {6.51, 0.06}, {6.53, 0.06}, {6.54, 0.06}, {6.54, 0.06}}},
                          {"q_s", {{14.97, 0.08}, {10.28, 0.07}, {9.27, 0.07}, {8.52, 0.07}, {7.98, 0.06}, {6.93, 0.06}}},
                          {"q0", {{6.00, 1.82}, {6.56, 0.20}, {6.56, 0.10}, {6.55, 0.07}, {6.55, 0.06}, {6.54, 0.06}}}})};
  Experiment rhom05{"table3_rho-0.5", std::string(title) + ", rho = -0.5", 1.395, 100000,
                    build(kTable3M,
                          {{"q_upper", {{2.57, 0.02}, {1.47, 0.02}, {1.42, 0.02}, {1.41, 0.02}, {1.39, 0.02}, {1.38, 0.02}}},
                           {"q_indep", {{1.70, 0.01}, {1.41, 0.02}, {1.40, 0.02}, {1.40, 0.02}, {1.39, 0.02}, {1.38, 0.02}}},
                           {"q_lower", {{0.67, 0.01}, {1.40, 0.02}, {1.40, 0.02}, {1.40, 0.02}, {1.39, 0.02}, {1.38, 0.02}}},
                           {"q_s", {{7.86, 0.05}, {3.63, 0.04}, {2.88, 0.03}, {2.45, 0.03}, {2.09, 0.03}, {1.55, 0.03}}},
                           {"q0", {{1.62, 0.96}, {1.43, 0.06}, {1.41, 0.03}, {1.41, 0.02}, {1.39, 0.02}, {1.38, 0.02}}}})};
  Experiment rho1{"table3_rho1", std::string(title) + ", rho = 1", 11.315, 100000,
                  build(kTable3M,
                        {{"q_upper", {{11.36, 0.06}, {11.36, 0.07}, {11.37, 0.07}, {11.35, 0.07}, {11.34, 0.07}, {11.33, 0.07}}},
                         {"q_indep", {{8.05, 0.05}, {10.22, 0.07}, {10.63, 0.07}, {10.84, 0.07}, {10.98, 0.07}, {11.24, 0.07}}},
                         {"q_lower", {{6.31, 0.05}, {10.00, 0.07}, {10.49, 0.07}, {10.74, 0.07}, {10.91, 0.07}, {11.22, 0.07}}},
                         {"q_s", {{16.79, 0.08}, {14.35, 0.08}, {13.63, 0.08}, {13.06, 0.07}, {12.63, 0.07}, {11.69, 0.07}}},
                         {"q0", {{8.84, 2.58}, {10.68, 0.74}, {10.93, 0.51}, {11.04, 0.37}, {11.12, 0.29}, {11.28, 0.12}}}})};
  // The printed Q_S error at M = 16 reads 0.06, presumably 0.006.
  Experiment rhom1{"table3_rho-1", std::string(title) + ", rho = -1", 0.0131, 100000,
                   build(kTable3M,
                         {{"q_upper", {{0.415, 0.002}, {0.018, 0.001}, {0.014, 0.001}, {0.014, 0.001}, {0.013, 0.001}, {0.013, 0.001}}},
                          {"q_indep", {{0.167, 0.001}, {0.014, 0.001}, {0.013, 0.001}, {0.014, 0.001}, {0.013, 0.001}, {0.013, 0.001}}},
                          {"q_lower", {{0.0, 0.0}, {0.014, 0.001}, {0.013, 0.001}, {0.014, 0.001}, {0.013, 0.001}, {0.013, 0.001}}},
                          {"q_s", {{2.839, 0.018}, {0.476, 0.008}, {0.250, 0.06}, {0.137, 0.004}, {0.080, 0.003}, {0.023, 0.002}}},
                          {"q0", {{0.207, 0.209}, {0.016, 0.003}, {0.014, 0.001}, {0.014, 0.001}, {0.013, 0.001}, {0.013, 0.001}}}})};
  return {rhom1, rhom05, rho0, rho05, rho1};
}

std::vector<Experiment> make_table4() {
  Experiment d3{"table4_d3", "Down-and-out call on 3 assets", std::nullopt, 100000,
                build(kTable4M,
                      {{"q_upper", {{8.96, 0.07}, {8.26, 0.07}, {7.83, 0.07}, {7.65, 0.07}, {7.60, 0.08}, {7.60, 0.08}, {7.60, 0.08}, {7.60, 0.08}}},
                       {"q_indep", {{6.69, 0.06}, {7.20, 0.07}, {7.43, 0.07}, {7.51, 0.07}, {7.56, 0.08}, {7.59, 0.08}, {7.59, 0.08}, {7.60, 0.08}}},
                       {"q_lower", {{5.13, 0.06}, {6.76, 0.07}, {7.31, 0.07}, {7.47, 0.07}, {7.54, 0.08}, {7.58, 0.08}, {7.59, 0.08}, {7.60, 0.08}}},
                       {"q_s", {{14.96, 0.10}, {13.27, 0.09}, {11.81, 0.09}, {10.76, 0.09}, {9.96, 0.09}, {9.29, 0.08}, {8.80, 0.08}, {7.91, 0.08}}},
                       {"q2", {{7.83, 1.20}, {7.73, 0.60}, {7.63, 0.27}, {7.58, 0.14}, {7.58, 0.10}, {7.59, 0.08}, {7.59, 0.08}, {7.60, 0.08}}},
                       {"q0", {{7.04, 1.97}, {7.51, 0.82}, {7.57, 0.33}, {7.56, 0.16}, {7.57, 0.11}, {7.59, 0.09}, {7.59, 0.08}, {7.60, 0.08}}}})};
  Experiment d10{"table4_d10", "Down-and-out call on 10 assets", std::nullopt, 100000,
                 build(kTable4M,
                       {{"q_upper", {{4.62, 0.05}, {3.56, 0.05}, {2.98, 0.05}, {2.80, 0.05}, {2.71, 0.05}, {2.67, 0.05}, {2.65, 0.05}, {2.65, 0.05}}},
                        {"q_indep", {{1.19, 0.02}, {1.97, 0.03}, {2.39, 0.04}, {2.60, 0.05}, {2.64, 0.05}, {2.65, 0.05}, {2.64, 0.05}, {2.65, 0.05}}},
                        {"q_lower", {{0.21, 0.01}, {1.33, 0.03}, {2.20, 0.04}, {2.54, 0.05}, {2.61, 0.05}, {2.64, 0.05}, {2.64, 0.05}, {2.65, 0.05}}},
                        {"q_s", {{10.36, 0.09}, {7.92, 0.08}, {6.13, 0.07}, {5.09, 0.07}, {4.37, 0.06}, {3.84, 0.06}, {3.48, 0.06}, {2.86, 0.05}}},
                        {"q2", {{2.90, 1.75}, {2.77, 0.84}, {2.68, 0.34}, {2.70, 0.15}, {2.67, 0.08}, {2.66, 0.06}, {2.65, 0.05}, {2.65, 0.05}}},
                        {"q0", {{2.41, 2.23}, {2.45, 1.16}, {2.59, 0.44}, {2.67, 0.18}, {2.66, 0.10}, {2.66, 0.07}, {2.64, 0.06}, {2.65, 0.05}}}})};
  return {d3, d10};
}

}  // namespace

const Row* Experiment::row(std::size_t m) const {
  for (const auto& r : rows)
    if (r.m == m) return &r;
  return nullptr;
}

const std::vector<Experiment>& table(int id) {
  static const std::vector<Experiment> t1 = make_table1();
  static const std::vector<Experiment> t2 = make_table2();
  static const std::vector<Experiment> t3 = make_table3();
  static const std::vector<Experiment> t4 = make_table4();
  switch (id) {
    case 1: return t1;
    case 2: return t2;
    case 3: return t3;
    case 4: return t4;
    default: throw std::invalid_argument("table id must be 1, 2, 3 or 4");
  }
}

}  // namespace bbmc::published
