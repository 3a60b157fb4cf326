//! The definition-file format: named algebras, coalgebras, forms, modules,
//! fixed tensors and matched pairs, plus an ordered task list. Line oriented;
//! `#` starts a comment; every referenced name must be declared earlier in
//! the file. Omitted products, coproducts and action entries default to zero,
//! and omitted twists to the identity.

use std::collections::BTreeMap;

use homconf_core::bialgebra::Coalgebra;
use homconf_core::constructions::Rep;
use homconf_core::lambda::{Algebra, Axiom, Kind, Table};
use homconf_core::module::{BilinearForm, Element, Endo, FreeModule, Tensor};
use homconf_core::poly::{Poly, Var};

use crate::expr::{parse_poly_at, SynError};

#[derive(Debug, Clone, PartialEq)]
pub struct PairDecl {
    pub name: String,
    pub left: String,
    pub right: String,
    pub actions: PairActions,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairActions {
    /// Mutual bracket representations: `rho` acts left-on-right, `sigma`
    /// right-on-left.
    Lie { rho: Table, sigma: Table },
    /// Left and right actions in both directions for product pairs.
    Product {
        la: Table,
        ra: Table,
        lb: Table,
        rb: Table,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
    Form {
        name: String,
        on: String,
        form: BilinearForm,
    },
    Rep {
        name: String,
        on: String,
        rep: Rep,
    },
    Tensor {
        name: String,
        on: String,
        tensor: Tensor,
    },
    Pair(PairDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Algebra(a) => &a.name,
            Decl::Coalgebra(c) => &c.name,
            Decl::Form { name, .. } => name,
            Decl::Rep { name, .. } => name,
            Decl::Tensor { name, .. } => name,
            Decl::Pair(p) => &p.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub target: String,
    pub axioms: Option<Vec<Axiom>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DefinitionFile {
    pub decls: Vec<Decl>,
    pub tasks: Vec<Task>,
}

impl DefinitionFile {
    pub fn find(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    pub fn algebra(&self, name: &str) -> Option<&Algebra> {
        match self.find(name) {
            Some(Decl::Algebra(a)) => Some(a),
            _ => None,
        }
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> SynError {
    SynError::new(line, col, msg)
}

/// One raw section: header location, kind word, optional name, body lines.
struct RawSection {
    line: usize,
    kind: String,
    name: Option<String>,
    body: Vec<(usize, Vec<char>)>,
}

fn strip_comment(raw: &str) -> &str {
    match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    }
}

fn split_sections(src: &str) -> Result<Vec<RawSection>, SynError> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let stripped = strip_comment(raw);
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') && !trimmed.contains('=') {
            if !trimmed.ends_with(']') {
                return Err(err(line, 1, "unterminated section header"));
            }
            let inner = &trimmed[1..trimmed.len() - 1];
            let mut words = inner.split_whitespace();
            let kind = words
                .next()
                .ok_or_else(|| err(line, 1, "empty section header"))?
                .to_string();
            let name = words.next().map(str::to_string);
            if words.next().is_some() {
                return Err(err(line, 1, "section header takes at most one name"));
            }
            let named = matches!(
                kind.as_str(),
                "algebra" | "coalgebra" | "form" | "rep" | "tensor" | "pair"
            );
            if named && name.is_none() {
                return Err(err(line, 1, format!("section `{kind}` needs a name")));
            }
            if !named && kind != "tasks" {
                return Err(err(line, 1, format!("unknown section `{kind}`")));
            }
            if !named && name.is_some() {
                return Err(err(line, 1, "`tasks` takes no name"));
            }
            sections.push(RawSection {
                line,
                kind,
                name,
                body: Vec::new(),
            });
        } else {
            match sections.last_mut() {
                Some(s) => s.body.push((line, stripped.chars().collect())),
                None => return Err(err(line, 1, "content before any section header")),
            }
        }
    }
    Ok(sections)
}

/// Splits `key = value`, returning the trimmed key, the value as chars, and
/// the 1-based column of the value's first character. Lines without `=`
/// return None.
fn split_assign(chars: &[char]) -> Option<(String, &[char], usize)> {
    let eq = chars.iter().position(|&c| c == '=')?;
    let key: String = chars[..eq].iter().collect::<String>().trim().to_string();
    let mut start = eq + 1;
    while start < chars.len() && chars[start].is_whitespace() {
        start += 1;
    }
    Some((key, &chars[start..], start + 1))
}

/// Signed top-level chunks of a sum, split outside parentheses.
fn split_terms(rhs: &[char], col0: usize) -> Vec<(i64, usize, Vec<char>)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i64;
    let mut start = 0usize;
    let flush = |out: &mut Vec<(i64, usize, Vec<char>)>, sign: i64, start: usize, end: usize| {
        let mut s = start;
        while s < end && rhs[s].is_whitespace() {
            s += 1;
        }
        let mut e = end;
        while e > s && rhs[e - 1].is_whitespace() {
            e -= 1;
        }
        out.push((sign, col0 + s, rhs[s..e].to_vec()));
    };
    for (i, &c) in rhs.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if i == start && out.is_empty() && c == '-' {
                    // leading sign of the first chunk
                    sign = -1;
                    start = i + 1;
                    continue;
                }
                flush(&mut out, sign, start, i);
                sign = if c == '-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => {}
        }
    }
    flush(&mut out, sign, start, rhs.len());
    out
}

/// Index of the last `*` outside parentheses, if any.
fn last_top_star(chunk: &[char]) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, &c) in chunk.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

/// Module-valued right-hand side: a sum of `EXPR * label` terms (bare labels
/// mean coefficient 1); `0` is the zero value.
fn parse_value(
    rhs: &[char],
    line: usize,
    col0: usize,
    labels: &BTreeMap<String, usize>,
    rank: usize,
) -> Result<Element, SynError> {
    let mut out = Element::zero(rank);
    for (sign, col, chunk) in split_terms(rhs, col0) {
        if chunk.is_empty() {
            return Err(err(line, col, "empty term"));
        }
        let text: String = chunk.iter().collect();
        let (coeff, label) = match last_top_star(&chunk) {
            Some(star) => {
                let tail: String = chunk[star + 1..].iter().collect::<String>().trim().to_string();
                if let Some(&k) = labels.get(&tail) {
                    let head = &chunk[..star];
                    let head_text: String = head.iter().collect();
                    (parse_poly_at(&head_text, line, col)?, Some(k))
                } else {
                    (parse_poly_at(&text, line, col)?, None)
                }
            }
            None => match labels.get(text.trim()) {
                Some(&k) => (Poly::one(), Some(k)),
                None => (parse_poly_at(&text, line, col)?, None),
            },
        };
        match label {
            Some(k) => {
                let signed = if sign < 0 { coeff.neg() } else { coeff };
                out.coeffs[k] = out.coeffs[k].add(&signed);
            }
            None if coeff.is_zero() => {}
            None => {
                return Err(err(
                    line,
                    col,
                    "term must end in `* <basis label>` (or be 0)",
                ));
            }
        }
    }
    Ok(out)
}

/// The trailing `(a x b)` of a tensor term, resolved to basis indices.
fn pair_of(tail: &str, labels: &BTreeMap<String, usize>) -> Option<(usize, usize)> {
    let t = tail.trim();
    if !t.starts_with('(') || !t.ends_with(')') {
        return None;
    }
    let inner = &t[1..t.len() - 1];
    let words: Vec<&str> = inner.split_whitespace().collect();
    if words.len() != 3 || words[1] != "x" {
        return None;
    }
    Some((*labels.get(words[0])?, *labels.get(words[2])?))
}

/// Tensor-valued right-hand side: a sum of `EXPR * (a x b)` terms.
fn parse_tensor_value(
    rhs: &[char],
    line: usize,
    col0: usize,
    labels: &BTreeMap<String, usize>,
    rank: usize,
) -> Result<Tensor, SynError> {
    let mut out = Tensor::zero(vec![rank, rank]);
    for (sign, col, chunk) in split_terms(rhs, col0) {
        if chunk.is_empty() {
            return Err(err(line, col, "empty term"));
        }
        let text: String = chunk.iter().collect();
        let parsed = match last_top_star(&chunk) {
            Some(star) => {
                let tail: String = chunk[star + 1..].iter().collect();
                pair_of(&tail, labels).map(|pair| {
                    let head: String = chunk[..star].iter().collect();
                    (head, pair)
                })
            }
            None => pair_of(&text, labels).map(|pair| ("1".to_string(), pair)),
        };
        match parsed {
            Some((head, (i, j))) => {
                let coeff = parse_poly_at(&head, line, col)?;
                let signed = if sign < 0 { coeff.neg() } else { coeff };
                out.add_term(vec![i, j], signed);
            }
            None => {
                let p = parse_poly_at(&text, line, col)?;
                if !p.is_zero() {
                    return Err(err(line, col, "term must end in `* (a x b)` (or be 0)"));
                }
            }
        }
    }
    Ok(out)
}

fn label_map(labels: &[String]) -> BTreeMap<String, usize> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect()
}

/// `head(x, y)` call syntax on the left of an assignment.
fn lhs_call(key: &str) -> Option<(&str, Vec<&str>)> {
    let open = key.find('(')?;
    if !key.ends_with(')') {
        return None;
    }
    let head = key[..open].trim();
    let inner = &key[open + 1..key.len() - 1];
    let args: Vec<&str> = inner.split(',').map(str::trim).collect();
    Some((head, args))
}

/// Common `basis`/`rank` bookkeeping shared by the sectioned declarations.
struct SpaceBuilder {
    labels: Option<Vec<String>>,
    declared_rank: Option<(usize, usize)>,
}

impl SpaceBuilder {
    fn new() -> Self {
        SpaceBuilder {
            labels: None,
            declared_rank: None,
        }
    }

    fn keyword(&mut self, line: usize, words: &[&str]) -> Result<bool, SynError> {
        match words[0] {
            "basis" => {
                if self.labels.is_some() {
                    return Err(err(line, 1, "duplicate `basis` line"));
                }
                if words.len() == 1 {
                    return Err(err(line, 1, "`basis` needs at least one label"));
                }
                let labels: Vec<String> = words[1..].iter().map(|w| w.to_string()).collect();
                let mut seen = BTreeMap::new();
                for l in &labels {
                    if seen.insert(l.clone(), ()).is_some() {
                        return Err(err(line, 1, format!("duplicate basis label `{l}`")));
                    }
                }
                self.labels = Some(labels);
                Ok(true)
            }
            "rank" => {
                if words.len() != 2 {
                    return Err(err(line, 1, "`rank` takes one integer"));
                }
                let n: usize = words[1]
                    .parse()
                    .map_err(|_| err(line, 1, "`rank` takes one integer"))?;
                self.declared_rank = Some((line, n));
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn finish(self, header_line: usize) -> Result<Vec<String>, SynError> {
        let labels = self
            .labels
            .ok_or_else(|| err(header_line, 1, "section needs a `basis` line"))?;
        if let Some((line, n)) = self.declared_rank {
            if n != labels.len() {
                return Err(err(
                    line,
                    1,
                    format!("rank {n} does not match basis of {} labels", labels.len()),
                ));
            }
        }
        Ok(labels)
    }
}

fn require_labels<'a>(
    labels: &'a Option<Vec<String>>,
    line: usize,
) -> Result<&'a Vec<String>, SynError> {
    labels
        .as_ref()
        .ok_or_else(|| err(line, 1, "`basis` must come before this line"))
}

fn lookup(
    map: &BTreeMap<String, usize>,
    label: &str,
    line: usize,
) -> Result<usize, SynError> {
    map.get(label)
        .copied()
        .ok_or_else(|| err(line, 1, format!("unknown basis label `{label}`")))
}

/// Twist columns accumulated from `alpha x = ...` style lines; defaults to
/// the identity when no line appears.
struct TwistBuilder {
    keyword: &'static str,
    cols: BTreeMap<usize, (usize, Element)>,
}

impl TwistBuilder {
    fn new(keyword: &'static str) -> Self {
        TwistBuilder {
            keyword,
            cols: BTreeMap::new(),
        }
    }

    fn line(
        &mut self,
        line: usize,
        key: &str,
        rhs: &[char],
        rhs_col: usize,
        map: &BTreeMap<String, usize>,
    ) -> Result<bool, SynError> {
        let words: Vec<&str> = key.split_whitespace().collect();
        if words.len() != 2 || words[0] != self.keyword {
            return Ok(false);
        }
        let j = lookup(map, words[1], line)?;
        let v = parse_value(rhs, line, rhs_col, map, map.len())?;
        if self.cols.insert(j, (line, v)).is_some() {
            return Err(err(
                line,
                1,
                format!("duplicate `{}` line for `{}`", self.keyword, words[1]),
            ));
        }
        Ok(true)
    }

    fn finish(self, rank: usize) -> Endo {
        let mut endo = Endo::identity(rank);
        for (j, (_, v)) in self.cols {
            for i in 0..rank {
                endo.mat[i][j] = v.coeffs[i].clone();
            }
        }
        endo
    }
}

fn build_algebra(sec: &RawSection) -> Result<Algebra, SynError> {
    let name = sec.name.clone().unwrap();
    let mut space = SpaceBuilder::new();
    let mut kind: Option<(usize, Kind)> = None;
    let mut alpha = TwistBuilder::new("alpha");
    let mut products: BTreeMap<(usize, usize), (usize, Element)> = BTreeMap::new();
    let mut saw_bracket = false;
    let mut saw_dot = false;
    let mut map = BTreeMap::new();

    for (line, chars) in &sec.body {
        let line = *line;
        match split_assign(chars) {
            None => {
                let text: String = chars.iter().collect();
                let words: Vec<&str> = text.split_whitespace().collect();
                if space.keyword(line, &words)? {
                    if let Some(labels) = &space.labels {
                        map = label_map(labels);
                    }
                    continue;
                }
                match words[0] {
                    "kind" => {
                        if words.len() != 2 {
                            return Err(err(line, 1, "`kind` takes one word"));
                        }
                        let k = Kind::from_name(words[1]).ok_or_else(|| {
                            err(line, 1, format!("unknown kind `{}`", words[1]))
                        })?;
                        if kind.replace((line, k)).is_some() {
                            return Err(err(line, 1, "duplicate `kind` line"));
                        }
                    }
                    w => return Err(err(line, 1, format!("unexpected line `{w} ...`"))),
                }
            }
            Some((key, rhs, rhs_col)) => {
                require_labels(&space.labels, line)?;
                if alpha.line(line, &key, rhs, rhs_col, &map)? {
                    continue;
                }
                let (i, j) = if key.starts_with('[') {
                    if !key.ends_with(']') {
                        return Err(err(line, 1, "malformed bracket product"));
                    }
                    let inner = &key[1..key.len() - 1];
                    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if parts.len() != 2 {
                        return Err(err(line, 1, "bracket product takes two labels"));
                    }
                    saw_bracket = true;
                    (lookup(&map, parts[0], line)?, lookup(&map, parts[1], line)?)
                } else if key.contains('.') {
                    let parts: Vec<&str> = key.split('.').map(str::trim).collect();
                    if parts.len() != 2 {
                        return Err(err(line, 1, "product takes two labels around `.`"));
                    }
                    saw_dot = true;
                    (lookup(&map, parts[0], line)?, lookup(&map, parts[1], line)?)
                } else {
                    return Err(err(line, 1, format!("unexpected assignment `{key} = ...`")));
                };
                if saw_bracket && saw_dot {
                    return Err(err(
                        line,
                        1,
                        "mixing `[a, b]` and `a . b` product lines in one algebra",
                    ));
                }
                let v = parse_value(rhs, line, rhs_col, &map, map.len())?;
                if products.insert((i, j), (line, v)).is_some() {
                    return Err(err(line, 1, format!("duplicate product line for `{key}`")));
                }
            }
        }
    }

    let labels = space.finish(sec.line)?;
    let n = labels.len();
    let kind = match kind {
        Some((line, k)) => {
            if k == Kind::Lie && saw_dot {
                return Err(err(line, 1, "kind lie uses `[a, b]` product lines"));
            }
            if k != Kind::Lie && saw_bracket {
                return Err(err(line, 1, "bracket lines belong to kind lie"));
            }
            k
        }
        None if saw_bracket => Kind::Lie,
        None => Kind::LeftSymmetric,
    };
    let mut table = Table::zero(n, n, n);
    for ((i, j), (_, v)) in products {
        for (k, p) in v.coeffs.iter().enumerate() {
            table.set(i, j, k, p.clone());
        }
    }
    Ok(Algebra {
        name,
        module: FreeModule::new(labels),
        table,
        alpha: alpha.finish(n),
        kind,
    })
}

fn check_coproduct_vars(t: &Tensor, line: usize) -> Result<(), SynError> {
    for p in t.coeffs.values() {
        if !p
            .vars()
            .iter()
            .all(|&v| v == Var::Del(1) || v == Var::Del(2))
        {
            return Err(err(
                line,
                1,
                "tensor coefficients may only use the leg operators D1, D2",
            ));
        }
    }
    Ok(())
}

fn build_coalgebra(sec: &RawSection) -> Result<Coalgebra, SynError> {
    let name = sec.name.clone().unwrap();
    let mut space = SpaceBuilder::new();
    let mut alpha = TwistBuilder::new("alpha");
    let mut delta: BTreeMap<usize, (usize, Tensor)> = BTreeMap::new();
    let mut map = BTreeMap::new();

    for (line, chars) in &sec.body {
        let line = *line;
        match split_assign(chars) {
            None => {
                let text: String = chars.iter().collect();
                let words: Vec<&str> = text.split_whitespace().collect();
                if space.keyword(line, &words)? {
                    if let Some(labels) = &space.labels {
                        map = label_map(labels);
                    }
                    continue;
                }
                return Err(err(line, 1, format!("unexpected line `{} ...`", words[0])));
            }
            Some((key, rhs, rhs_col)) => {
                require_labels(&space.labels, line)?;
                if alpha.line(line, &key, rhs, rhs_col, &map)? {
                    continue;
                }
                let words: Vec<&str> = key.split_whitespace().collect();
                if words.len() == 2 && words[0] == "delta" {
                    let k = lookup(&map, words[1], line)?;
                    let t = parse_tensor_value(rhs, line, rhs_col, &map, map.len())?;
                    check_coproduct_vars(&t, line)?;
                    if delta.insert(k, (line, t)).is_some() {
                        return Err(err(
                            line,
                            1,
                            format!("duplicate `delta` line for `{}`", words[1]),
                        ));
                    }
                } else {
                    return Err(err(line, 1, format!("unexpected assignment `{key} = ...`")));
                }
            }
        }
    }

    let labels = space.finish(sec.line)?;
    let n = labels.len();
    let tensors: Vec<Tensor> = (0..n)
        .map(|k| {
            delta
                .get(&k)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| Tensor::zero(vec![n, n]))
        })
        .collect();
    Ok(Coalgebra::new(
        name,
        FreeModule::new(labels),
        alpha.finish(n),
        tensors,
    ))
}

/// Resolves an `on ALG` (or `left A` / `right B`) reference against the
/// declarations made so far.
fn resolve_algebra<'a>(
    file: &'a DefinitionFile,
    name: &str,
    line: usize,
) -> Result<&'a Algebra, SynError> {
    file.algebra(name)
        .ok_or_else(|| err(line, 1, format!("`{name}` is not a declared algebra")))
}

fn build_form(sec: &RawSection, file: &DefinitionFile) -> Result<Decl, SynError> {
    let name = sec.name.clone().unwrap();
    let mut on: Option<(usize, String)> = None;
    let mut entries: BTreeMap<(usize, usize), (usize, Poly)> = BTreeMap::new();

    for (line, chars) in &sec.body {
        let line = *line;
        match split_assign(chars) {
            None => {
                let text: String = chars.iter().collect();
                let words: Vec<&str> = text.split_whitespace().collect();
                if words.len() == 2 && words[0] == "on" {
                    if on.replace((line, words[1].to_string())).is_some() {
                        return Err(err(line, 1, "duplicate `on` line"));
                    }
                } else {
                    return Err(err(line, 1, format!("unexpected line `{} ...`", words[0])));
                }
            }
            Some((key, rhs, rhs_col)) => {
                let (on_line, alg_name) = on
                    .as_ref()
                    .ok_or_else(|| err(line, 1, "`on ALG` must come before entries"))?;
                let alg = resolve_algebra(file, alg_name, *on_line)?;
                let map = label_map(&alg.module.labels);
                let (head, args) = lhs_call(&key)
                    .ok_or_else(|| err(line, 1, "expected `w(a, b) = ...`"))?;
                if head != "w" || args.len() != 2 {
                    return Err(err(line, 1, "expected `w(a, b) = ...`"));
                }
                let i = lookup(&map, args[0], line)?;
                let j = lookup(&map, args[1], line)?;
                let text: String = rhs.iter().collect();
                let p = parse_poly_at(&text, line, rhs_col)?;
                if !p.vars().iter().all(|&v| v == Var::Lam(0)) {
                    return Err(err(line, rhs_col, "form entries are polynomials in L"));
                }
                if entries.insert((i, j), (line, p)).is_some() {
                    return Err(err(line, 1, format!("duplicate entry `{key}`")));
                }
            }
        }
    }

    let (on_line, alg_name) = on.ok_or_else(|| err(sec.line, 1, "form needs an `on ALG` line"))?;
    let alg = resolve_algebra(file, &alg_name, on_line)?;
    let n = alg.rank();
    let mut mat = vec![vec![Poly::zero(); n]; n];
    for ((i, j), (_, p)) in entries {
        mat[i][j] = p;
    }
    Ok(Decl::Form {
        name,
        on: alg_name,
        form: BilinearForm { entries: mat },
    })
}

fn build_rep(sec: &RawSection, file: &DefinitionFile) -> Result<Decl, SynError> {
    let name = sec.name.clone().unwrap();
    let mut on: Option<(usize, String)> = None;
    let mut space = SpaceBuilder::new();
    let mut beta = TwistBuilder::new("beta");
    let mut left: BTreeMap<(usize, usize), (usize, Element)> = BTreeMap::new();
    let mut right: BTreeMap<(usize, usize), (usize, Element)> = BTreeMap::new();
    let mut saw_right = false;
    let mut map = BTreeMap::new();

    for (line, chars) in &sec.body {
        let line = *line;
        match split_assign(chars) {
            None => {
                let text: String = chars.iter().collect();
                let words: Vec<&str> = text.split_whitespace().collect();
                if space.keyword(line, &words)? {
                    if let Some(labels) = &space.labels {
                        map = label_map(labels);
                    }
                    continue;
                }
                if words.len() == 2 && words[0] == "on" {
                    if on.replace((line, words[1].to_string())).is_some() {
                        return Err(err(line, 1, "duplicate `on` line"));
                    }
                    continue;
                }
                return Err(err(line, 1, format!("unexpected line `{} ...`", words[0])));
            }
            Some((key, rhs, rhs_col)) => {
                require_labels(&space.labels, line)?;
                if beta.line(line, &key, rhs, rhs_col, &map)? {
                    continue;
                }
                let (on_line, alg_name) = on
                    .as_ref()
                    .ok_or_else(|| err(line, 1, "`on ALG` must come before actions"))?;
                let alg = resolve_algebra(file, alg_name, *on_line)?;
                let amap = label_map(&alg.module.labels);
                let (head, args) = lhs_call(&key)
                    .ok_or_else(|| err(line, 1, "expected `left(a, m) = ...` or `right(a, m) = ...`"))?;
                if args.len() != 2 {
                    return Err(err(line, 1, "actions take two arguments"));
                }
                let table = match head {
                    "left" => &mut left,
                    "right" => {
                        saw_right = true;
                        &mut right
                    }
                    other => return Err(err(line, 1, format!("unknown action `{other}`"))),
                };
                let a = lookup(&amap, args[0], line)?;
                let m = lookup(&map, args[1], line)?;
                let v = parse_value(rhs, line, rhs_col, &map, map.len())?;
                if table.insert((a, m), (line, v)).is_some() {
                    return Err(err(line, 1, format!("duplicate action line `{key}`")));
                }
            }
        }
    }

    let (on_line, alg_name) = on.ok_or_else(|| err(sec.line, 1, "rep needs an `on ALG` line"))?;
    let alg = resolve_algebra(file, &alg_name, on_line)?;
    let labels = space.finish(sec.line)?;
    let m = labels.len();
    let n = alg.rank();
    let mut l = Table::zero(n, m, m);
    for ((a, u), (_, v)) in left {
        for (k, p) in v.coeffs.iter().enumerate() {
            l.set(a, u, k, p.clone());
        }
    }
    let space_mod = FreeModule::new(labels);
    let b = beta.finish(m);
    let rep = if saw_right {
        let mut r = Table::zero(n, m, m);
        for ((a, u), (_, v)) in right {
            for (k, p) in v.coeffs.iter().enumerate() {
                r.set(a, u, k, p.clone());
            }
        }
        Rep::two_sided(space_mod, b, l, r)
    } else {
        Rep::one_sided(space_mod, b, l)
    };
    Ok(Decl::Rep {
        name,
        on: alg_name,
        rep,
    })
}

fn build_tensor(sec: &RawSection, file: &DefinitionFile) -> Result<Decl, SynError> {
    let name = sec.name.clone().unwrap();
    let mut on: Option<(usize, String)> = None;
    let mut tensor: Option<(usize, Tensor)> = None;

    for (line, chars) in &sec.body {
        let line = *line;
        match split_assign(chars) {
            None => {
                let text: String = chars.iter().collect();
                let words: Vec<&str> = text.split_whitespace().collect();
                if words.len() == 2 && words[0] == "on" {
                    if on.replace((line, words[1].to_string())).is_some() {
                        return Err(err(line, 1, "duplicate `on` line"));
                    }
                } else {
                    return Err(err(line, 1, format!("unexpected line `{} ...`", words[0])));
                }
            }
            Some((key, rhs, rhs_col)) => {
                if key != "r" {
                    return Err(err(line, 1, "expected `r = ...`"));
                }
                let (on_line, alg_name) = on
                    .as_ref()
                    .ok_or_else(|| err(line, 1, "`on ALG` must come before `r`"))?;
                let alg = resolve_algebra(file, alg_name, *on_line)?;
                let map = label_map(&alg.module.labels);
                let t = parse_tensor_value(rhs, line, rhs_col, &map, alg.rank())?;
                check_coproduct_vars(&t, line)?;
                if tensor.replace((line, t)).is_some() {
                    return Err(err(line, 1, "duplicate `r` line"));
                }
            }
        }
    }

    let (on_line, alg_name) = on.ok_or_else(|| err(sec.line, 1, "tensor needs an `on ALG` line"))?;
    let alg = resolve_algebra(file, &alg_name, on_line)?;
    let t = tensor
        .map(|(_, t)| t)
        .unwrap_or_else(|| Tensor::zero(vec![alg.rank(), alg.rank()]));
    Ok(Decl::Tensor {
        name,
        on: alg_name,
        tensor: t,
    })
}

fn build_pair(sec: &RawSection, file: &DefinitionFile) -> Result<Decl, SynError> {
    let name = sec.name.clone().unwrap();
    let mut left_name: Option<(usize, String)> = None;
    let mut right_name: Option<(usize, String)> = None;
    let mut tables: BTreeMap<&'static str, BTreeMap<(usize, usize), (usize, Element)>> =
        BTreeMap::new();

    for (line, chars) in &sec.body {
        let line = *line;
        match split_assign(chars) {
            None => {
                let text: String = chars.iter().collect();
                let words: Vec<&str> = text.split_whitespace().collect();
                let slot = match words[0] {
                    "left" => &mut left_name,
                    "right" => &mut right_name,
                    w => return Err(err(line, 1, format!("unexpected line `{w} ...`"))),
                };
                if words.len() != 2 {
                    return Err(err(line, 1, "expected an algebra name"));
                }
                if slot.replace((line, words[1].to_string())).is_some() {
                    return Err(err(line, 1, format!("duplicate `{}` line", words[0])));
                }
            }
            Some((key, rhs, rhs_col)) => {
                let (ll, ln) = left_name
                    .as_ref()
                    .ok_or_else(|| err(line, 1, "`left A` must come before actions"))?;
                let (rl, rn) = right_name
                    .as_ref()
                    .ok_or_else(|| err(line, 1, "`right B` must come before actions"))?;
                let a = resolve_algebra(file, ln, *ll)?;
                let b = resolve_algebra(file, rn, *rl)?;
                let amap = label_map(&a.module.labels);
                let bmap = label_map(&b.module.labels);
                let (head, args) = lhs_call(&key)
                    .ok_or_else(|| err(line, 1, "expected an action line like `la(a, x) = ...`"))?;
                if args.len() != 2 {
                    return Err(err(line, 1, "actions take two arguments"));
                }
                // rho/la/ra: left algebra acts, values in the right module;
                // sigma/lb/rb the other way around.
                let (slot, i, j, vmap, vrank) = match head {
                    "rho" | "la" | "ra" => (
                        head,
                        lookup(&amap, args[0], line)?,
                        lookup(&bmap, args[1], line)?,
                        &bmap,
                        b.rank(),
                    ),
                    "sigma" | "lb" | "rb" => (
                        head,
                        lookup(&bmap, args[0], line)?,
                        lookup(&amap, args[1], line)?,
                        &amap,
                        a.rank(),
                    ),
                    other => return Err(err(line, 1, format!("unknown action `{other}`"))),
                };
                let slot: &'static str = match slot {
                    "rho" => "rho",
                    "sigma" => "sigma",
                    "la" => "la",
                    "ra" => "ra",
                    "lb" => "lb",
                    "rb" => "rb",
                    _ => unreachable!(),
                };
                let v = parse_value(rhs, line, rhs_col, vmap, vrank)?;
                if tables
                    .entry(slot)
                    .or_default()
                    .insert((i, j), (line, v))
                    .is_some()
                {
                    return Err(err(line, 1, format!("duplicate action line `{key}`")));
                }
            }
        }
    }

    let (ll, ln) = left_name.ok_or_else(|| err(sec.line, 1, "pair needs a `left A` line"))?;
    let (rl, rn) = right_name.ok_or_else(|| err(sec.line, 1, "pair needs a `right B` line"))?;
    let a = resolve_algebra(file, &ln, ll)?.clone();
    let b = resolve_algebra(file, &rn, rl)?.clone();

    let lie_heads = tables.contains_key("rho") || tables.contains_key("sigma");
    let prod_heads = ["la", "ra", "lb", "rb"].iter().any(|h| tables.contains_key(h));
    if lie_heads && prod_heads {
        return Err(err(
            sec.line,
            1,
            "mixing bracket actions (rho/sigma) with product actions (la/ra/lb/rb)",
        ));
    }

    let fill = |entries: Option<&BTreeMap<(usize, usize), (usize, Element)>>,
                n: usize,
                m: usize| {
        let mut t = Table::zero(n, m, m);
        if let Some(es) = entries {
            for ((i, j), (_, v)) in es {
                for (k, p) in v.coeffs.iter().enumerate() {
                    t.set(*i, *j, k, p.clone());
                }
            }
        }
        t
    };

    let actions = if lie_heads || (a.kind == Kind::Lie && b.kind == Kind::Lie) {
        if a.kind != Kind::Lie || b.kind != Kind::Lie {
            return Err(err(
                sec.line,
                1,
                "bracket actions need two `kind lie` algebras",
            ));
        }
        PairActions::Lie {
            rho: fill(tables.get("rho"), a.rank(), b.rank()),
            sigma: fill(tables.get("sigma"), b.rank(), a.rank()),
        }
    } else {
        if a.kind == Kind::Lie || b.kind == Kind::Lie {
            return Err(err(
                sec.line,
                1,
                "product actions need two product algebras",
            ));
        }
        PairActions::Product {
            la: fill(tables.get("la"), a.rank(), b.rank()),
            ra: fill(tables.get("ra"), a.rank(), b.rank()),
            lb: fill(tables.get("lb"), b.rank(), a.rank()),
            rb: fill(tables.get("rb"), b.rank(), a.rank()),
        }
    };

    Ok(Decl::Pair(PairDecl {
        name,
        left: ln,
        right: rn,
        actions,
    }))
}

fn build_tasks(sec: &RawSection, file: &DefinitionFile) -> Result<Vec<Task>, SynError> {
    let mut tasks = Vec::new();
    for (line, chars) in &sec.body {
        let line = *line;
        let text: String = chars.iter().collect();
        let words: Vec<&str> = text.split_whitespace().collect();
        match words[0] {
            "check" => {
                if words.len() < 2 || words.len() > 3 {
                    return Err(err(line, 1, "expected `check NAME [axiom,axiom]`"));
                }
                let target = words[1].to_string();
                let decl = file
                    .find(&target)
                    .ok_or_else(|| err(line, 1, format!("`{target}` is not declared")))?;
                let axioms = match words.get(2) {
                    None => None,
                    Some(list) => {
                        if !matches!(decl, Decl::Algebra(_)) {
                            return Err(err(line, 1, "axiom lists apply to algebras only"));
                        }
                        let mut axs = Vec::new();
                        for w in list.split(',') {
                            let ax = Axiom::from_name(w)
                                .ok_or_else(|| err(line, 1, format!("unknown axiom `{w}`")))?;
                            axs.push(ax);
                        }
                        Some(axs)
                    }
                };
                tasks.push(Task { target, axioms });
            }
            w => return Err(err(line, 1, format!("unknown directive `{w}`"))),
        }
    }
    Ok(tasks)
}

pub fn parse_definition(src: &str) -> Result<DefinitionFile, SynError> {
    let sections = split_sections(src)?;
    let mut file = DefinitionFile::default();
    let mut saw_tasks = false;
    for sec in &sections {
        if let Some(name) = &sec.name {
            if file.find(name).is_some() {
                return Err(err(sec.line, 1, format!("duplicate name `{name}`")));
            }
        }
        match sec.kind.as_str() {
            "algebra" => {
                let a = build_algebra(sec)?;
                file.decls.push(Decl::Algebra(a));
            }
            "coalgebra" => {
                let c = build_coalgebra(sec)?;
                file.decls.push(Decl::Coalgebra(c));
            }
            "form" => {
                let d = build_form(sec, &file)?;
                file.decls.push(d);
            }
            "rep" => {
                let d = build_rep(sec, &file)?;
                file.decls.push(d);
            }
            "tensor" => {
                let d = build_tensor(sec, &file)?;
                file.decls.push(d);
            }
            "pair" => {
                let d = build_pair(sec, &file)?;
                file.decls.push(d);
            }
            "tasks" => {
                if saw_tasks {
                    return Err(err(sec.line, 1, "duplicate `[tasks]` section"));
                }
                saw_tasks = true;
                file.tasks = build_tasks(sec, &file)?;
            }
            _ => unreachable!("split_sections filters section kinds"),
        }
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use homconf_core::lambda::certify;
    use homconf_core::poly::{LAM, DEL};

    const SHIFT: &str = "\
# a rank-2 algebra with one nonzero product
[algebra shift]
kind left-symmetric
basis a b
a . b = (L)*b

[tasks]
check shift
";

    #[test]
    fn parses_a_product_algebra() {
        let file = parse_definition(SHIFT).unwrap();
        let alg = file.algebra("shift").unwrap();
        assert_eq!(alg.kind, Kind::LeftSymmetric);
        assert_eq!(alg.rank(), 2);
        assert_eq!(*alg.table.entry(0, 1, 1), Poly::var(LAM));
        assert!(alg.table.entry(0, 0, 0).is_zero());
        assert_eq!(alg.alpha, Endo::identity(2));
        assert_eq!(file.tasks.len(), 1);
        assert!(certify(alg).passes());
    }

    #[test]
    fn bracket_lines_imply_a_lie_algebra() {
        let src = "\
[algebra vir]
basis l e
[l, l] = (D + 2*L)*e
";
        let file = parse_definition(src).unwrap();
        let alg = file.algebra("vir").unwrap();
        assert_eq!(alg.kind, Kind::Lie);
        assert_eq!(
            *alg.table.entry(0, 0, 1),
            Poly::var(DEL).add(&Poly::var(LAM).mul(&Poly::int(2)))
        );
    }

    #[test]
    fn twist_columns_override_the_identity() {
        let src = "\
[algebra tw]
kind left-symmetric
basis a b
alpha a = -1 * a
a . a = b
";
        let alg = parse_definition(src).unwrap();
        let alg = alg.algebra("tw").unwrap();
        assert_eq!(alg.alpha.mat[0][0], Poly::int(-1));
        assert_eq!(alg.alpha.mat[1][1], Poly::one());
    }

    #[test]
    fn forms_reps_tensors_and_pairs_resolve_references() {
        let src = "\
[algebra base]
kind lie
basis l e
[l, l] = (D + 2*L)*e

[form omega]
on base
w(l, e) = 1
w(e, l) = -1

[rep reg]
on base
basis m
left(l, m) = (L)*m

[tensor r0]
on base
r = (D1)*(e x e)

[algebra other]
kind lie
basis x

[pair p0]
left base
right other
rho(l, x) = (L)*x
";
        let file = parse_definition(src).unwrap();
        assert_eq!(file.decls.len(), 6);
        match file.find("omega").unwrap() {
            Decl::Form { on, form, .. } => {
                assert_eq!(on, "base");
                assert_eq!(form.entries[0][1], Poly::one());
            }
            other => panic!("wrong decl {other:?}"),
        }
        match file.find("reg").unwrap() {
            Decl::Rep { rep, .. } => {
                assert_eq!(rep.l.dims(), (2, 1, 1));
                assert!(rep.r.is_none());
            }
            other => panic!("wrong decl {other:?}"),
        }
        match file.find("p0").unwrap() {
            Decl::Pair(p) => match &p.actions {
                PairActions::Lie { rho, sigma } => {
                    assert_eq!(rho.dims(), (2, 1, 1));
                    assert_eq!(sigma.dims(), (1, 2, 2));
                    assert!(sigma.is_zero());
                }
                other => panic!("wrong actions {other:?}"),
            },
            other => panic!("wrong decl {other:?}"),
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity() {
        let src = "\
[algebra base]
kind lie
basis l e
alpha l = (2)*l
[l, l] = (D + 2*L)*e - 3*l

[coalgebra cop]
basis u v
delta u = (D1 - D2)*(u x v)

[form omega]
on base
w(l, e) = L^2 + 1

[rep reg]
on base
basis m n
beta m = m + n
left(l, m) = (L)*n
right(e, n) = m

[tensor r0]
on base
r = (2*D1)*(l x e) - (e x e)

[algebra dual]
kind lie
basis x y

[pair p0]
left base
right dual
rho(l, x) = (L + 1)*y
sigma(y, e) = l

[tasks]
check base skew,jacobi
check omega
";
        let file = parse_definition(src).unwrap();
        let printed = print_definition(&file);
        let reparsed = parse_definition(&printed).unwrap();
        assert_eq!(file, reparsed);
        // and the printer is a fixed point
        assert_eq!(printed, print_definition(&reparsed));
    }

    #[test]
    fn rejects_forward_references_and_duplicates() {
        let e = parse_definition("[form f]\non nowhere\nw(a, a) = 1\n").unwrap_err();
        assert!(e.msg.contains("not a declared algebra"), "{e}");

        let e = parse_definition(
            "[algebra a]\nkind lie\nbasis x\n\n[algebra a]\nkind lie\nbasis y\n",
        )
        .unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.msg.contains("duplicate name"), "{e}");
    }

    #[test]
    fn locates_bad_coefficients_precisely() {
        let src = "[algebra a]\nkind left-symmetric\nbasis u\nu . u = (L + Q)*u\n";
        let e = parse_definition(src).unwrap_err();
        assert_eq!((e.line, e.col), (4, 14));
        assert!(e.msg.contains("unknown variable `Q`"), "{e}");
    }

    #[test]
    fn coproduct_coefficients_are_restricted_to_leg_operators() {
        let src = "[coalgebra c]\nbasis u\ndelta u = (L)*(u x u)\n";
        let e = parse_definition(src).unwrap_err();
        assert!(e.msg.contains("leg operators"), "{e}");
    }

    #[test]
    fn mixed_product_notation_is_rejected() {
        let src = "[algebra a]\nbasis u v\nu . v = u\n[u, v] = v\n";
        let e = parse_definition(src).unwrap_err();
        assert!(e.msg.contains("mixing"), "{e}");
    }

    #[test]
    fn task_axiom_lists_are_validated() {
        let src = "[algebra a]\nkind lie\nbasis u\n\n[tasks]\ncheck a skew,frobnicate\n";
        let e = parse_definition(src).unwrap_err();
        assert!(e.msg.contains("unknown axiom `frobnicate`"), "{e}");
    }
}

fn coeff_term(p: &Poly, tail: &str) -> String {
    if *p == Poly::one() {
        tail.to_string()
    } else {
        format!("({p})*{tail}")
    }
}

fn element_src(e: &Element, labels: &[String]) -> String {
    let terms: Vec<String> = e
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(i, p)| coeff_term(p, &labels[i]))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn tensor_src(t: &Tensor, labels: &[String]) -> String {
    let terms: Vec<String> = t
        .coeffs
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(idx, p)| coeff_term(p, &format!("({} x {})", labels[idx[0]], labels[idx[1]])))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn push_twist(out: &mut String, keyword: &str, endo: &Endo, labels: &[String]) {
    if *endo == Endo::identity(labels.len()) {
        return;
    }
    for (j, label) in labels.iter().enumerate() {
        let col = endo.column(j);
        out.push_str(&format!("{keyword} {label} = {}\n", element_src(&col, labels)));
    }
}

fn push_table(
    out: &mut String,
    table: &Table,
    fmt_key: impl Fn(usize, usize) -> String,
    value_labels: &[String],
) {
    let (l, r, _) = table.dims();
    for i in 0..l {
        for j in 0..r {
            let mut v = Element::zero(value_labels.len());
            for (k, c) in v.coeffs.iter_mut().enumerate() {
                *c = table.entry(i, j, k).clone();
            }
            if v.is_zero() {
                continue;
            }
            out.push_str(&format!(
                "{} = {}\n",
                fmt_key(i, j),
                element_src(&v, value_labels)
            ));
        }
    }
}

/// Canonical text for a definition file; `parse_definition` returns an equal
/// structure back.
pub fn print_definition(file: &DefinitionFile) -> String {
    let mut out = String::new();
    for decl in &file.decls {
        match decl {
            Decl::Algebra(a) => {
                out.push_str(&format!("[algebra {}]\n", a.name));
                out.push_str(&format!("kind {}\n", a.kind.name()));
                out.push_str(&format!("basis {}\n", a.module.labels.join(" ")));
                push_twist(&mut out, "alpha", &a.alpha, &a.module.labels);
                let labels = &a.module.labels;
                let key = |i: usize, j: usize| {
                    if a.kind == Kind::Lie {
                        format!("[{}, {}]", labels[i], labels[j])
                    } else {
                        format!("{} . {}", labels[i], labels[j])
                    }
                };
                push_table(&mut out, &a.table, key, labels);
            }
            Decl::Coalgebra(c) => {
                out.push_str(&format!("[coalgebra {}]\n", c.name));
                out.push_str(&format!("basis {}\n", c.module.labels.join(" ")));
                push_twist(&mut out, "alpha", &c.alpha, &c.module.labels);
                for (k, t) in c.delta.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    out.push_str(&format!(
                        "delta {} = {}\n",
                        c.module.labels[k],
                        tensor_src(t, &c.module.labels)
                    ));
                }
            }
            Decl::Form { name, on, form } => {
                out.push_str(&format!("[form {name}]\non {on}\n"));
                let labels = &file.algebra(on).expect("validated on parse").module.labels;
                for (i, row) in form.entries.iter().enumerate() {
                    for (j, p) in row.iter().enumerate() {
                        if p.is_zero() {
                            continue;
                        }
                        out.push_str(&format!("w({}, {}) = {p}\n", labels[i], labels[j]));
                    }
                }
            }
            Decl::Rep { name, on, rep } => {
                out.push_str(&format!("[rep {name}]\non {on}\n"));
                out.push_str(&format!("basis {}\n", rep.space.labels.join(" ")));
                push_twist(&mut out, "beta", &rep.beta, &rep.space.labels);
                let alabels = &file.algebra(on).expect("validated on parse").module.labels;
                let mlabels = &rep.space.labels;
                push_table(
                    &mut out,
                    &rep.l,
                    |i, j| format!("left({}, {})", alabels[i], mlabels[j]),
                    mlabels,
                );
                if let Some(r) = &rep.r {
                    push_table(
                        &mut out,
                        r,
                        |i, j| format!("right({}, {})", alabels[i], mlabels[j]),
                        mlabels,
                    );
                }
            }
            Decl::Tensor { name, on, tensor } => {
                out.push_str(&format!("[tensor {name}]\non {on}\n"));
                let labels = &file.algebra(on).expect("validated on parse").module.labels;
                out.push_str(&format!("r = {}\n", tensor_src(tensor, labels)));
            }
            Decl::Pair(p) => {
                out.push_str(&format!("[pair {}]\nleft {}\nright {}\n", p.name, p.left, p.right));
                let alabels = &file.algebra(&p.left).expect("validated on parse").module.labels;
                let blabels = &file.algebra(&p.right).expect("validated on parse").module.labels;
                match &p.actions {
                    PairActions::Lie { rho, sigma } => {
                        push_table(
                            &mut out,
                            rho,
                            |i, j| format!("rho({}, {})", alabels[i], blabels[j]),
                            blabels,
                        );
                        push_table(
                            &mut out,
                            sigma,
                            |i, j| format!("sigma({}, {})", blabels[i], alabels[j]),
                            alabels,
                        );
                    }
                    PairActions::Product { la, ra, lb, rb } => {
                        let ab = |t: &Table, head: &str, out: &mut String| {
                            push_table(
                                out,
                                t,
                                |i, j| format!("{head}({}, {})", alabels[i], blabels[j]),
                                blabels,
                            );
                        };
                        let ba = |t: &Table, head: &str, out: &mut String| {
                            push_table(
                                out,
                                t,
                                |i, j| format!("{head}({}, {})", blabels[i], alabels[j]),
                                alabels,
                            );
                        };
                        ab(la, "la", &mut out);
                        ab(ra, "ra", &mut out);
                        ba(lb, "lb", &mut out);
                        ba(rb, "rb", &mut out);
                    }
                }
            }
        }
        out.push('\n');
    }
    if !file.tasks.is_empty() {
        out.push_str("[tasks]\n");
        for t in &file.tasks {
            match &t.axioms {
                None => out.push_str(&format!("check {}\n", t.target)),
                Some(axs) => {
                    let list: Vec<&str> = axs.iter().map(|a| a.name()).collect();
                    out.push_str(&format!("check {} {}\n", t.target, list.join(",")));
                }
            }
        }
    }
    out
}
