"""
Special lines in characteristic p
=================================

For a prime power q = r*m - 1 the degree q+1 Fermat surface over F_{q^2} has
many more lines than 3(q+1)^2. Pushing one of them down by the r-th power map
gives a divisor D_p on the degree-m surface that is not a line class.
"""
from fermatlines.charp import (SpecialDivisor, find_cover_params, find_special_line, general_line,
                               pushdown_self_intersection, validate_line_on_surface)
from fermatlines.field_tower import build_field_ctx, element_order

cover = find_cover_params(7)
print("cover for m=7:", cover.as_dict())

# F_{13^2} with gamma a primitive 7th root of unity
ctx = build_field_ctx(cover.p, [1, 5, 1], 7)
print("order of gamma (the root of f):", element_order(ctx.elem([0, 1])))

alpha, beta = find_special_line(ctx, cover, seed=0)
line = general_line(ctx, alpha, beta)
print("alpha =", alpha, " beta =", beta)
print("line lies on the degree-14 surface:", validate_line_on_surface(line, cover.mhat))

SD = SpecialDivisor(ctx, cover, alpha, beta)
f = SD.orbit_pairings()
print("D_p^2 from adjunction:", pushdown_self_intersection(cover),
      " from the projection formula:", SD.self_intersection_projection)
print("pairings D.sigma(D) for the first few sigma:", f[:6].tolist())
