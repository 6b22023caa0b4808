DISCREPANCY_LEDGER = """
Reconciliations between the closed-form model and the published figures.

1. Hop labels. The ranking table labels trees with R + 1 hops, the hypercube
   with d/2 and the torus with ceil(d*k/4). These labels are shown as
   published and never feed the model; the model's average hops are P/N for
   trees, d/2 for the cube and d*k/4 (odd k: d*(k^2 - 1)/(4k)) for the torus.

2. Tree links. The link table counts L = N for trees. A tree on N nodes has
   N - 1 edges, so graph verification reports the difference as a documented
   discrepancy. The model keeps L = N.

3. Torus diameter. The tabulated diameter d*k/4 is half the true ring
   diameter d*floor(k/2) for even k. Verification reports the ratio.

4. Torus with k = 2. A 2-node ring is a single link, so the built graph has
   d*N/2 edges against the tabulated d*N.

5. 3-Torus row. With N = 2^21 the model gives about 3.1% relative
   bandwidth; the published row reads 10%. The row is kept and annotated.

6. 20-Cube population. 2^20 = 1,048,576 peers (1.0 million) against the
   published 2.1 million, which is the 2^21 population of the tori.

7. Average hops with and without self-pairs. The cube and torus closed forms include the
   N zero-length self-pairs. Oracle and simulator report the mean over the
   N(N - 1) distinct pairs, which is larger by the factor N/(N - 1).

8. Routing ties. Shortest paths are not unique on the cube and torus.
   Smallest-id forwarding loads the edges unevenly; dimension-order
   forwarding gives every edge the same load, matching the symmetric model.
"""
