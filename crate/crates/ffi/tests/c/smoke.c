#include <math.h>
#include <stdio.h>
#include <string.h>

#include "monetary_lens.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    MlEconomy *fisher = NULL;
    CHECK(ml_economy_fisher(&fisher) == ML_STATUS_OK);

    MlSummary s;
    CHECK(ml_economy_summarize(fisher, &s) == ML_STATUS_OK);
    CHECK(s.velocity == 20.0);
    CHECK(s.goods_side == 100000000.0);
    CHECK(s.gdp == 50000000.0);
    CHECK(s.ledger_len == 20);

    MlEconomy *doubled = NULL;
    CHECK(ml_economy_scale_production(fisher, 2.0, &doubled) == ML_STATUS_OK);
    double price = 0.0;
    CHECK(ml_economy_price(doubled, "bread", &price) == ML_STATUS_OK);
    CHECK(price == 0.05);

    MlEconomy *shifted = NULL;
    CHECK(ml_economy_shift_flows(fisher, "coal", "bread", 2, &shifted) == ML_STATUS_OK);
    CHECK(ml_economy_summarize(shifted, &s) == ML_STATUS_OK);
    CHECK(s.gdp == 60000000.0);

    MlEconomy *bad = NULL;
    CHECK(ml_economy_shift_flows(fisher, "bread", "coal", 4, &bad) == ML_STATUS_FLOW_SHIFT);
    CHECK(bad == NULL);
    CHECK(ml_last_error_message() != NULL);

    int32_t years[] = {2000, 2005, 2010};
    double money[] = {1000.0, 4000.0, 18000.0};
    double gdp[] = {7306.0, 20000.0, 46309.0};
    MlSeries *m = NULL, *g = NULL, *n = NULL;
    CHECK(ml_series_new("M2", "RUB", 1e9, years, money, 3, &m) == ML_STATUS_OK);
    CHECK(ml_series_new("GDP", "RUB", 1e9, years, gdp, 3, &g) == ML_STATUS_OK);
    double mult = 0.0;
    CHECK(ml_series_growth_multiplier(m, 2000, 2010, &mult) == ML_STATUS_OK);
    CHECK(mult == 18.0);
    CHECK(ml_series_growth_multiplier(m, 1999, 2010, &mult) == ML_STATUS_MISSING_PERIOD);
    CHECK(ml_normalize(g, m, 2000, &n) == ML_STATUS_OK);
    CHECK(ml_series_len(n) == 3);
    int32_t y = 0;
    double v = 0.0;
    CHECK(ml_series_point(n, 2, &y, &v) == ML_STATUS_OK);
    CHECK(y == 2010);
    CHECK(fabs(v - 46309.0 / 18.0) < 1e-9);
    CHECK(ml_series_point(n, 3, &y, &v) == ML_STATUS_OUT_OF_RANGE);

    double alt = 3.0;
    MlDebtRow row;
    CHECK(ml_normalize_debt_row(361.0, 561.0, 2.0, &alt, &row) == ML_STATUS_OK);
    CHECK(row.has_alt);
    CHECK(row.alt_normalized_end == 187.0);
    CHECK(ml_normalize_debt_row(0.0, 561.0, 2.0, NULL, &row) == ML_STATUS_DOMAIN);

    CHECK(ml_gdp_expenditure(10, 5, 3, 2, 4) == 16.0);
    CHECK(strlen(ml_version()) > 0);

    ml_series_free(n);
    ml_series_free(g);
    ml_series_free(m);
    ml_economy_free(shifted);
    ml_economy_free(doubled);
    ml_economy_free(fisher);
    ml_economy_free(NULL);
    printf("ok\n");
    return 0;
}
