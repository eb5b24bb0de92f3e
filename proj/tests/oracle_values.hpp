#pragma once
// Generated by tests/oracles/oracles.py; do not edit by hand.
namespace oracle {
inline constexpr double vol_lq_n2_q1 = 2.0;
inline constexpr double vol_lq_n2_q1_5 = 2.7378536239189029;
inline constexpr double vol_lq_n2_q2 = 3.1415926535897932;
inline constexpr double vol_lq_n2_q4 = 3.7081493546027438;
inline constexpr double vol_lq_n2_qinf = 4.0;
inline constexpr double vol_lq_n3_q1 = 1.3333333333333333;
inline constexpr double vol_lq_n3_q1_5 = 2.9427657258847144;
inline constexpr double vol_lq_n3_q2 = 4.188790204786391;
inline constexpr double vol_lq_n3_q4 = 6.481987351786382;
inline constexpr double vol_lq_n3_qinf = 8.0;
inline constexpr double vol_lq_n4_q1 = 0.66666666666666667;
inline constexpr double vol_lq_n4_q1_5 = 2.6484891532962429;
inline constexpr double vol_lq_n4_q2 = 4.9348022005446793;
inline constexpr double vol_lq_n4_q4 = 10.799516628978768;
inline constexpr double vol_lq_n4_qinf = 16.0;
inline constexpr double vol_lq_n5_q1 = 0.26666666666666667;
inline constexpr double vol_lq_n5_q1_5 = 2.071764464646293;
inline constexpr double vol_lq_n5_q2 = 5.2637890139143246;
inline constexpr double vol_lq_n5_q4 = 17.279226606366029;
inline constexpr double vol_lq_n5_qinf = 32.0;
inline constexpr double vol_lq_n6_q1 = 0.088888888888888889;
inline constexpr double vol_lq_n6_q1_5 = 1.4433116862402983;
inline constexpr double vol_lq_n6_q2 = 5.16771278004997;
inline constexpr double vol_lq_n6_q4 = 26.697480411846146;
inline constexpr double vol_lq_n6_qinf = 64.0;
inline constexpr double c_2_2 = 0.31830988618379067;
inline constexpr double c_3_2 = 0.238732414637843;
inline constexpr double c_2_1 = 0.25;
inline constexpr double c_4_3_5 = 0.35053379924905252;
inline constexpr double sphere_area_5 = 26.318945069571623;
inline constexpr double disk_moment_p1 = 1.3333333333333333;
inline constexpr double disk_moment_p2 = 0.78539816339744831;
inline constexpr double disk_gamma_p2 = 0.28209479177387814;
inline constexpr double disk_central_slicing = 0.88622692545275801;
inline constexpr double ball3_central_slicing = 0.82713398786586669;
inline constexpr double disk_r2_mass = 1.5707963267948966;
inline constexpr double gaussian_disk_mass_s07 = 1.969028278349628;
inline constexpr double square_dovr_disk = 1.2533141373155003;
inline constexpr double jensen_square_p2_lhs = 1.2732395447351627;
inline constexpr double jensen_square_p2_rhs = 1.2220309407033146;
inline constexpr double tent_F0 = 0.5;
inline constexpr double tent_F1 = 0.57735026918962576;
inline constexpr double tent_F3 = 0.66874030497642202;
inline constexpr double tent_Fm05 = 0.44444444444444444;
inline constexpr double cube2_min_p1 = 0.23570226039551585;
inline constexpr double cube3_min_p1 = 0.23454854685828547;
inline constexpr double cube2_diag_p1 = 0.23570226039551584;
}  // namespace oracle
