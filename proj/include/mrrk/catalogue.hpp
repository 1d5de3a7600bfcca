#pragma once

#include "mrrk/tableau.hpp"

#include <map>
#include <string>

namespace mrrk {

// Coefficient data in the plain-text method-file format. Fractions are kept
// exactly as printed in the sources; decimal entries carry all published
// digits. Two transcription notes, also covered by tests and the README:
//  * Heun(3,3): the third weight of b1 is 3/4 (the printed 1/4 does not sum
//    to one); standard third-order Heun weights are shipped.
//  * DP(7,5): the published third weight vector satisfies the order
//    conditions only through order 3, so it is catalogued with order 3.
// SSPRK(3,3) carries rank 2: every second-order weight vector for its (A, c)
// has b1 = b2, so three such vectors can never be linearly independent.

namespace builtin {

inline constexpr const char* ssprk22 = R"(method SSPRK(2,2)
stages 2
weights 2
orders 2 1
A
0 0
1 0
b 1/2 1/2
b 1/3 2/3
c 0 1
)";

inline constexpr const char* ssprk33 = R"(method SSPRK(3,3)
stages 3
weights 3
orders 3 2 2
rank 2
A
0 0 0
1 0 0
1/4 1/4 0
b 1/6 1/6 2/3
b 0.291485418878409 0.291485418878409 0.417029162243181
b 0.395011932394815 0.395011932394815 0.209976135210371
c 0 1 1/2
)";

inline constexpr const char* heun33 = R"(method Heun(3,3)
stages 3
weights 2
orders 3 2
A
0 0 0
1/3 0 0
0 2/3 0
b 1/4 0 3/4
b 0.006419303047187 0.487161393905626 0.506419303047187
c 0 1/3 2/3
)";

inline constexpr const char* rk44 = R"(method RK(4,4)
stages 4
weights 2
orders 4 2
A
0 0 0 0
1/2 0 0 0
0 1/2 0 0
0 0 1 0
b 1/6 1/3 1/3 1/6
b 1/4 1/4 1/4 1/4
c 0 1/2 1/2 1
)";

inline constexpr const char* fehlberg64 = R"(method Fehlberg(6,4)
stages 6
weights 3
orders 4 3 3
A
0 0 0 0 0 0
1/4 0 0 0 0 0
3/32 9/32 0 0 0 0
1932/2197 -7200/2197 7296/2197 0 0 0
439/216 -8 3680/513 -845/4104 0 0
-8/27 2 -3544/2565 1859/4104 -11/40 0
b 25/216 0 1408/2565 2197/4104 -1/5 0
b 0.122702088570621 0.000000000000003 0.251243531398616 -0.072328563385151 0.246714063515406 0.451668879900505
b 0.150593325320835 0.000000000000003 0.275657325006399 0.414789231909538 -0.131467847351019 0.290427965114243
c 0 1/4 3/8 12/13 1 1/2
)";

inline constexpr const char* fehlberg65 = R"(method Fehlberg(6,5)
stages 6
weights 2
orders 5 4
A
0 0 0 0 0 0
1/4 0 0 0 0 0
3/32 9/32 0 0 0 0
1932/2197 -7200/2197 7296/2197 0 0 0
439/216 -8 3680/513 -845/4104 0 0
-8/27 2 -3544/2565 1859/4104 -11/40 0
b 16/135 0 6656/12825 28561/56430 -9/50 2/55
b 25/216 0 1408/2565 2197/4104 -1/5 0
c 0 1/4 3/8 12/13 1 1/2
)";

inline constexpr const char* dp75 = R"(method DP(7,5)
stages 7
weights 3
orders 5 4 3
A
0 0 0 0 0 0 0
1/5 0 0 0 0 0 0
3/40 9/40 0 0 0 0 0
44/45 -56/15 32/9 0 0 0 0
19372/6561 -25360/2187 64448/6561 -212/729 0 0 0
9017/3168 -355/33 46732/5247 49/176 -5103/18656 0 0
35/384 0 500/1113 125/192 -2187/6784 11/84 0
b 35/384 0 500/1113 125/192 -2187/6784 11/84 0
b 5179/57600 0 7571/16695 393/640 -92097/339200 187/2100 1/40
b 0.159422044716717 0.000000000000009 0.310936711045800 0.444052776789396 0.307005319740028 -0.230738637667449 0.009321785375499
c 0 1/5 3/10 4/5 8/9 1 1
)";

inline constexpr const char* ark324 = R"(method ARK3(2)4L[2]SA
type ark
stages 4
weights 2
orders 3 2
A explicit
0 0 0 0
1767732205903/2027836641118 0 0 0
5535828885825/10492691773637 788022342437/10882634858940 0 0
6485989280629/16251701735622 -4246266847089/9704473918619 10755448449292/10357097424841 0
A implicit
0 0 0 0
1767732205903/4055673282236 1767732205903/4055673282236 0 0
2746238789719/10658868560708 -640167445237/6845629431997 1767732205903/4055673282236 0
1471266399579/7840856788654 -4482444167858/7529755066697 11266239266428/11593286722821 1767732205903/4055673282236
b 1471266399579/7840856788654 -4482444167858/7529755066697 11266239266428/11593286722821 1767732205903/4055673282236
b 2756255671327/12835298489170 -10771552573575/22201958757719 9247589265047/10645013368117 2193209047091/5459859503100
c 0 1767732205903/2027836641118 3/5 1
)";

inline constexpr const char* ark436 = R"(method ARK4(3)6L[2]SA
type ark
stages 6
weights 2
orders 4 3
A explicit
0 0 0 0 0 0
1/2 0 0 0 0 0
13861/62500 6889/62500 0 0 0 0
-116923316275/2393684061468 -2731218467317/15368042101831 9408046702089/11113171139209 0 0 0
-451086348788/2902428689909 -2682348792572/7519795681897 12662868775082/11960479115383 3355817975965/11060851509271 0 0
647845179188/3216320057751 73281519250/8382639484533 552539513391/3454668386233 3354512671639/8306763924573 4040/17871 0
A implicit
0 0 0 0 0 0
1/4 1/4 0 0 0 0
8611/62500 -1743/31250 1/4 0 0 0
5012029/34652500 -654441/2922500 174375/388108 1/4 0 0
15267082809/155376265600 -71443401/120774400 730878875/902184768 2285395/8070912 1/4 0
82889/524892 0 15625/83664 69875/102672 -2260/8211 1/4
b 82889/524892 0 15625/83664 69875/102672 -2260/8211 1/4
b 4586570599/29645900160 0 178811875/945068544 814220225/1159782912 -3700637/11593932 61727/225920
c 0 1/2 83/250 31/50 17/20 1
)";

}  // namespace builtin

/// Every coefficient set used by the experiments, keyed by method name.
inline const std::map<std::string, Method>& builtin_catalogue() {
  static const std::map<std::string, Method> cat = [] {
    std::map<std::string, Method> m;
    for (const char* text :
         {builtin::ssprk22, builtin::ssprk33, builtin::heun33, builtin::rk44, builtin::fehlberg64,
          builtin::fehlberg65, builtin::dp75, builtin::ark324, builtin::ark436}) {
      Method method = parse_method(text);
      std::string name = std::holds_alternative<EmbeddedSet>(method)
                             ? std::get<EmbeddedSet>(method).name
                             : std::get<ArkPair>(method).name;
      m.emplace(std::move(name), std::move(method));
    }
    return m;
  }();
  return cat;
}

inline const EmbeddedSet& find_embedded_set(const std::string& name) {
  const auto& cat = builtin_catalogue();
  auto it = cat.find(name);
  if (it == cat.end()) throw std::out_of_range("unknown method: " + name);
  if (!std::holds_alternative<EmbeddedSet>(it->second))
    throw std::invalid_argument(name + " is an additive pair, not an explicit embedded set");
  return std::get<EmbeddedSet>(it->second);
}

inline const ArkPair& find_ark_pair(const std::string& name) {
  const auto& cat = builtin_catalogue();
  auto it = cat.find(name);
  if (it == cat.end()) throw std::out_of_range("unknown method: " + name);
  if (!std::holds_alternative<ArkPair>(it->second))
    throw std::invalid_argument(name + " is not an additive pair");
  return std::get<ArkPair>(it->second);
}

}  // namespace mrrk
