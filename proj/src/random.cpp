#include "fdside/random.hpp"

#include "fdside/model.hpp"

#include <cmath>

namespace fdside {

double DrawRng::log_uniform_db(double lo_db, double hi_db)
{
    return db_to_linear(uniform(lo_db, hi_db));
}

double DrawRng::log_uniform(double lo, double hi)
{
    if (!(lo > 0.0) || !(hi >= lo))
        throw DomainError("log_uniform needs 0 < lo <= hi");
    if (hi == lo)
        return lo;
    return lo * std::exp(uniform() * std::log(hi / lo));
}

} // namespace fdside
