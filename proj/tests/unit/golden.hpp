#pragma once

// Reference values for the quartic 0.05 x^4 - 0.5 x^2 with W = x, computed
// independently with mpmath (tests/oracles/golden_values.py, 50 digits).

namespace golden {

inline constexpr double I_m1 = 0.40066225976899974;
inline constexpr double J_m1 = 2.4799613637456043;
inline constexpr double dIdE_m1 = 1.6371909545184654;
inline constexpr double i_dIde_m1 = -3.5124073655203632;  // i dI_l/deps at (-1, 0)
inline constexpr double dJdE_m1 = -2.9346848000640757;
inline constexpr double gamma_m1 = -2.1453864961973486;

inline constexpr double beta_m1 = 1.6625077511098137;   // inner turning point at E = -1
inline constexpr double alpha_m1 = 2.6899940478558293;  // outer

inline constexpr double a7_x = -7.0248147310407264;
inline constexpr double a7_x3 = -35.124073655203632;
inline constexpr double a7_one = 3.2743819090369307;

struct Row {
  double E, I, J, dIdE;
};

inline constexpr Row table[] = {
    {-1.1, 0.23839388345083579, 2.784376004280039, 1.6086693474029109},
    {-1.05, 0.31917170242651859, 2.6292013520958527, 1.6225606567619823},
    {-1.0, I_m1, J_m1, dIdE_m1},
    {-0.95, 0.48290440864736517, 2.3354046350740046, 1.6526383244702048},
    {-0.9, 0.56594121707083568, 2.1947081698407151, 1.6689937097790277},
    {-0.5, 1.2661809708405321, 1.160121442020141, 1.851263270917808},
    {-0.25, 1.753597497385155, 0.56662200169637153, 2.0751355227703953},
    {-0.1, 2.0842826683370574, 0.22386092984774966, 2.3818698788727416},
};

}  // namespace golden
