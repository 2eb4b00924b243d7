"""Flag complexes of colored graphs and their reduced homology."""

from orthohedral.homology import (check_conditions, flag_complex, gen_multipartite,
                                  gen_random_admissible, homology, wedge_verdict)

# K_{2,2,2} is the octahedron: a single 2-sphere.
octa = gen_multipartite([2, 2, 2])
print("octahedron betti numbers:", homology(flag_complex(octa)).betti)

# Complete multipartite graphs give joins of point sets: a wedge of spheres.
for sizes in ([3, 3], [2, 3, 3], [3, 3, 3]):
    v = wedge_verdict(gen_multipartite(sizes), len(sizes))
    print(sizes, "-> degree", v.concentrated_degree, "spheres", v.sphere_count)

# Thinning out edges while keeping the two neighbourhood conditions.
g = gen_random_admissible(2, [5, 6], seed=4, keep_prob=0.2)
print("edges kept:", len(g.edges), "of", 30, "conditions hold:", check_conditions(g, 2))
v = wedge_verdict(g, 2)
print("verdict:", v.passed, "degree", v.concentrated_degree, "spheres", v.sphere_count)
