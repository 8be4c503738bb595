use crate::automata::{Symbol, WeightedAutomaton, Word};
use crate::error::{Error, Result};

/// Guard on the number of words visited by [`for_each_word`].
pub const ENUMERATION_LIMIT: f64 = 1e7;

/// A word function that can be evaluated incrementally along the prefix tree.
///
/// A cursor summarises a prefix `u`; [`PrefixWalk::child`] extends it by one
/// symbol and [`PrefixWalk::value`] reads the function at `u`.
pub trait PrefixWalk {
    type Cursor: Clone;

    fn root(&self) -> Result<Self::Cursor>;
    fn child(&self, c: &Self::Cursor, x: Symbol) -> Result<Self::Cursor>;
    fn value(&self, c: &Self::Cursor) -> f64;

    fn value_of(&self, w: &Word) -> Result<f64> {
        let mut c = self.root()?;
        for &x in w.symbols() {
            c = self.child(&c, x)?;
        }
        Ok(self.value(&c))
    }
}

impl PrefixWalk for WeightedAutomaton {
    type Cursor = Vec<f64>;

    fn root(&self) -> Result<Vec<f64>> {
        Ok(self.init().to_vec())
    }

    fn child(&self, c: &Vec<f64>, x: Symbol) -> Result<Vec<f64>> {
        Ok(self.step(c, x))
    }

    fn value(&self, c: &Vec<f64>) -> f64 {
        self.termination(c)
    }
}

impl<A: PrefixWalk, B: PrefixWalk> PrefixWalk for (A, B) {
    type Cursor = (A::Cursor, B::Cursor);

    fn root(&self) -> Result<Self::Cursor> {
        Ok((self.0.root()?, self.1.root()?))
    }

    fn child(&self, c: &Self::Cursor, x: Symbol) -> Result<Self::Cursor> {
        Ok((self.0.child(&c.0, x)?, self.1.child(&c.1, x)?))
    }

    /// Difference of the two sides.
    fn value(&self, c: &Self::Cursor) -> f64 {
        self.0.value(&c.0) - self.1.value(&c.1)
    }
}

impl<W: PrefixWalk + ?Sized> PrefixWalk for &W {
    type Cursor = W::Cursor;

    fn root(&self) -> Result<Self::Cursor> {
        (**self).root()
    }

    fn child(&self, c: &Self::Cursor, x: Symbol) -> Result<Self::Cursor> {
        (**self).child(c, x)
    }

    fn value(&self, c: &Self::Cursor) -> f64 {
        (**self).value(c)
    }
}

/// Number of words of length at most `max_len` over `k` symbols.
pub fn count_words(k: usize, max_len: usize) -> f64 {
    (0..=max_len).map(|l| (k as f64).powi(l as i32)).sum()
}

/// Depth-first visit of every word of length `≤ max_len`, parents before
/// children and siblings in symbol order. Fails with
/// [`Error::EnumerationTooLarge`] past [`ENUMERATION_LIMIT`] words.
pub fn for_each_word<W, F>(walk: &W, symbols: usize, max_len: usize, mut visit: F) -> Result<()>
where
    W: PrefixWalk,
    F: FnMut(&[Symbol], &W::Cursor),
{
    let count = count_words(symbols, max_len);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut path = Vec::with_capacity(max_len);
    let mut stack = vec![(walk.root()?, 0usize)];
    visit(&path, &stack[0].0);
    while !stack.is_empty() {
        let depth = stack.len() - 1;
        let (cursor, next) = stack.last_mut().expect("nonempty");
        if depth == max_len || *next == symbols {
            stack.pop();
            path.pop();
            continue;
        }
        let x = *next;
        *next += 1;
        let c = walk.child(cursor, x)?;
        path.push(x);
        visit(&path, &c);
        stack.push((c, 0));
    }
    Ok(())
}
