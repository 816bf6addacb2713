import math, os
OUT = os.path.dirname(os.path.abspath(__file__))

def curve(anchors, y0, y1):
    a = sorted(anchors.items())
    out = {}
    for y in range(y0, y1 + 1):
        for (ya, va), (yb, vb) in zip(a, a[1:]):
            if ya <= y <= yb:
                f = (y - ya) / (yb - ya)
                out[y] = round(math.exp(math.log(va) + f * (math.log(vb) - math.log(va))), 2)
                break
    return out

def write(rel, series, note):
    p = os.path.join(OUT, rel)
    os.makedirs(os.path.dirname(p), exist_ok=True)
    with open(p, "w") as f:
        f.write(f"# {note}\n# synthetic log-linear curve through anchor years\n")
        f.write("year,value\n")
        for y in sorted(series):
            v = series[y]
            s = repr(float(v))
            if s.endswith(".0"):
                s = s[:-2]
            f.write(f"{y},{s}\n")

C = {}
# country -> list of (label, role, file, anchors, y0, y1, note)
us_m2x = {1980: 1500, 1990: 3300, 2000: 7000, 2010: 14700}
us_rmf = {1980: 62, 1990: 350, 2000: 900, 2010: 700}
us_m2 = {y: us_m2x_v + rmf for (y, us_m2x_v), rmf in zip(sorted(us_m2x.items()), [us_rmf[k] for k in sorted(us_rmf)])}
datasets = [
 ("USA","USD",1e9,[("M1","money","usa/m1.csv",{1980:385,1990:795,2000:1087,2010:1744},1980,2010),
    ("M2","money","usa/m2.csv",us_m2,1980,2010),
    ("RMF","money","usa/retail_money_funds.csv",us_rmf,1980,2010),
    ("FL793130005","money","usa/fl793130005.csv",{1980:1700,1990:3800,1992:3500,1995:4000,2000:6500,2010:13500},1980,2010),
    ("GDP","gdp","usa/gdp.csv",{1980:2788,1990:5801,2000:9952,2010:14527},1980,2010)]),
 ("Eurozone","EUR",1e9,[("M1","money","eurozone/m1.csv",{1999:1900,2000:2000,2010:4700},1999,2010),
    ("M2","money","eurozone/m2.csv",{1999:4300,2000:4500,2010:8820},1999,2010),
    ("GDP","gdp","eurozone/gdp.csv",{2002:7250,2010:9200},2002,2010)]),
 ("UK","GBP",1e9,[("M1","money","uk/m1.csv",{1988:180,1990:220,2000:520,2010:1150},1988,2010),
    ("M2","money","uk/m2.csv",{1988:300,1990:380,2000:800,2010:1700},1988,2010),
    ("M3","money","uk/m3.csv",{1988:350,1990:450,2000:900,2010:2200},1988,2010),
    ("GDP","gdp","uk/gdp.csv",{1988:468,1990:570,2000:976,2010:1459},1988,2010)]),
 ("Switzerland","CHF",1e9,[("M1","money","switzerland/m1.csv",{1985:110,1999:200,2000:190,2010:400},1985,2010),
    ("M2","money","switzerland/m2.csv",{1985:190,1999:330,2000:315,2010:580},1985,2010),
    ("M3","money","switzerland/m3.csv",{1985:280,1990:340,1999:470,2000:455,2010:773.5},1985,2010),
    ("GDP","gdp","switzerland/gdp.csv",{1985:250,2000:415,2010:546},1985,2010)]),
 ("India","INR",1e9,[("M1","money","india/m1.csv",{1985:450,1990:900,2000:3800,2010:16000},1985,2010),
    ("M2","money","india/m2.csv",{1985:500,1990:1000,2000:4100,2010:17000},1985,2010),
    ("M3","money","india/m3.csv",{1985:1200,1990:2650,2000:13250,2010:66250},1985,2010),
    ("GDP","gdp","india/gdp.csv",{1985:2900,1990:5800,2000:21000,2010:78000},1985,2010)]),
 ("China","CNY",1e9,[("M0","money","china/m0.csv",{2000:1470,2010:4410},2000,2010),
    ("M1","money","china/m1.csv",{2000:5300,2010:27030},2000,2010),
    ("M2","money","china/m2.csv",{2000:13460,2010:68650},2000,2010),
    ("GDP","gdp","china/gdp.csv",{2000:9920,2010:40150},2000,2010)]),
 ("Iceland","ISK",1e9,[("M1","money","iceland/m1.csv",{1990:45,2000:90,2008:600,2010:520},1990,2010),
    ("M2","money","iceland/m2.csv",{1990:90,2000:190,2008:1500,2010:1300},1990,2010),
    ("M3","money","iceland/m3.csv",{1990:180,2000:414,2008:4800,2010:4140},1990,2010),
    ("GDP","gdp","iceland/gdp.csv",{1990:370,2000:680,2008:1480,2010:1540},1990,2010)]),
 ("New Zealand","NZD",1e9,[("M1","money","new_zealand/m1.csv",{1988:10,2000:22,2010:40},1988,2010),
    ("M3","money","new_zealand/m3.csv",{1988:40,1990:46,2000:92,2010:184},1988,2010),
    ("GDP","gdp","new_zealand/gdp.csv",{1988:60,2000:112,2010:194},1988,2010)]),
 ("Russia","RUB",1e9,[("M0","money","russia/m0.csv",{1997:104,2000:300,2010:5000},1997,2010),
    ("M2","money","russia/m2.csv",{1997:380,2000:1000,2010:18000},1997,2010),
    ("GDP","gdp","russia/gdp.csv",{1997:2520,2000:7306,2010:46309},1997,2010)]),
]
man = ["# Bundled fixture datasets. Every series is SYNTHETIC: a log-linear curve",
       "# through anchor years chosen to reproduce published growth multipliers.",
       "# Money stocks are year-start values; GDP is the nominal annual total.", ""]
def entry(country, label, role, f, cur, scale, note):
    return ["[dataset]", f"country = {country}", f"label = {label}", f"role = {role}", f"file = {f}",
            f"currency = {cur}", f"unit_scale = {scale:.0e}".replace("e+0", "e").replace("e+", "e"), f"convention_note = {note}", "synthetic = true", ""]
for country, cur, scale, sers in datasets:
    for label, role, f, anchors, y0, y1 in sers:
        note = "year-start stock" if role == "money" else "nominal annual total"
        write(f, curve(anchors, y0, y1), f"{country} {label} ({cur}, billions), {note}")
        man += entry(country, label, role, f, cur, scale, note)
    if country == "USA":
        man += ["[aggregate]", "country = USA", "label = M2-ex-RMF", "terms = +M2 -RMF", ""]

# Japan: three series generations per aggregate, concatenated at 1998 and 2003.
jp = {"M1": {1985:90,1990:120,2000:300,2010:560}, "M2": {1985:300,1990:480,2000:520,2010:670}}
codes = {"M1": ["MA'MAMS1AN01","MA'MAMS3AN01","MA'MAMS5ANM1"], "M2": ["MA'MAMS1ANM2C","MA'MAMS3ANM2C","MA'MAMS5ANM2"]}
gens = [(1985,1998,1985,1997),(1998,2003,1998,2002),(2003,2010,2003,2010)]
for label, anchors in jp.items():
    full = curve(anchors, 1985, 2010)
    segs = []
    for i,(f0,f1,w0,w1) in enumerate(gens):
        s = {y: full[y] for y in range(w0, w1+1)}
        # boundary-year overlap values from the neighbouring generation differ by a definition break
        if f1 > w1:
            s[f1] = round(full[f1] * 1.03, 2)
        fname = f"japan/{label.lower()}_{f0}_{f1}.csv"
        write(fname, s, f"Japan {label} series generation {codes[label][i]} ({f0}-{f1}), trillions JPY, year-start stock")
        seg_label = f"{label}@{f0}"
        man += entry("Japan", seg_label, "money", fname, "JPY", 1e12, f"year-start stock; BoJ series {codes[label][i]}")
        segs.append(f"{seg_label}:{w0}:{w1}")
    man += ["[splice]", "country = Japan", f"label = {label}", "segments = " + ", ".join(segs), ""]
write("japan/gdp.csv", curve({1985:330,1990:450,2000:510,2010:480},1985,2010), "Japan GDP (JPY, trillions), nominal annual total")
man += entry("Japan", "GDP", "gdp", "japan/gdp.csv", "JPY", 1e12, "nominal annual total")
man += ["[aggregate]", "country = Japan", "label = M1+M2", "terms = +M1 +M2", ""]
open(os.path.join(OUT, "manifest.ini"), "w").write("\n".join(man).rstrip() + "\n")

open(os.path.join(OUT, "debt_1999_2009.csv"), "w").write("""# Government debt 1999 and 2009 (currency unit billions) with money supply
# multipliers; printed_* columns carry the published figures for cross-checking.
country,debt_start,debt_end,multiplier,alt_multiplier,printed_normalized,printed_pct
UK,354.4,759.5,2.6,,292.12,-17
USA,5662,13972,2.0,,6986,23
Germany,1225,1760,2.0,1.4,880,-28
Spain,361,561,2.0,3.0,281,-22
Italy,1281,1763,2.0,2.0,921,-37
""")
