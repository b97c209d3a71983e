"""
Random discs and a small corpus run
===================================

Random discs are grown by accretion on the boundary.  Filtering to 7-located
discs and running the companion and fan suites over them is what
``locus corpus`` does at scale.
"""

from locus import filter_7_located, gen_random_disc
from locus.corpus import load_manifest, run_corpus

discs = [gen_random_disc(12, 30, seed) for seed in range(20)]
located = list(filter_7_located(discs))
print(len(located), "of", len(discs), "random discs are 7-located")
D = located[0]
print(D.name, "boundary", len(D.boundary), "interior", len(D.interior_vertices),
      "area", D.area, "= 2i + b - 2:", D.area == 2 * len(D.interior_vertices) + len(D.boundary) - 2)

manifest = load_manifest("""{
  "name": "demo",
  "settings": {"loop_max": 6},
  "streams": [{"name": "rand",
               "random": {"boundary": [6, 14], "interior": [0, 20]},
               "seeds": {"start": 0, "count": 12},
               "filter": "7-located",
               "suites": ["lemma-3-8", "theorem"]}]
}""")
report = run_corpus(manifest, threads=1)
print("\n".join(report.lines(timing=False)))
