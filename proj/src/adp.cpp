#include "aevt/adp.hpp"

namespace aevt::adp {

template struct ValueTable<double>;
template struct ValueTable<Rational>;
template VIRun<double> vi_run(const ADPProblem<double>&, const double&, std::size_t, std::uint64_t);
template VIRun<Rational> vi_run(const ADPProblem<Rational>&, const Rational&, std::size_t, std::uint64_t);
template PIRun<double> pi_run(const ADPProblem<double>&, const Policy<double>&, std::size_t, const double&,
                              std::uint64_t, std::size_t, double);
template HeydariResult<double> heydari_iterate(const ADPProblem<double>&, const ValueTable<double>&,
                                               const Vec<double>&, const Vec<double>&, std::size_t, const double&,
                                               const double&, const double&);
template HeydariResult<Rational> heydari_iterate(const ADPProblem<Rational>&, const ValueTable<Rational>&,
                                                 const Vec<Rational>&, const Vec<Rational>&, std::size_t,
                                                 const Rational&, const Rational&, const Rational&);

} // namespace aevt::adp
