//! Arena-backed treap with parent links and weighted subtree sums.
//!
//! The ordering is supplied by the caller on each descent, which lets the
//! word tree compare through the LCE index instead of storing keys.

use std::cmp::Ordering;

pub(crate) const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Node<T> {
    val: T,
    weight: usize,
    sum: usize,
    prio: u64,
    left: usize,
    right: usize,
    parent: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Treap<T> {
    nodes: Vec<Option<Node<T>>>,
    free: Vec<usize>,
    root: usize,
    live: usize,
    rng: u64,
}

impl<T> Treap<T> {
    pub fn new(seed: u64) -> Self {
        Treap {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            live: 0,
            rng: seed | 1,
        }
    }

    fn next_prio(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.rng;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.rng = x;
        x.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    fn node(&self, id: usize) -> &Node<T> {
        self.nodes[id].as_ref().expect("stale treap handle")
    }

    fn node_mut(&mut self, id: usize) -> &mut Node<T> {
        self.nodes[id].as_mut().expect("stale treap handle")
    }

    fn sum_of(&self, id: usize) -> usize {
        if id == NIL {
            0
        } else {
            self.node(id).sum
        }
    }

    fn pull(&mut self, id: usize) {
        let (l, r) = {
            let n = self.node(id);
            (n.left, n.right)
        };
        let s = self.sum_of(l) + self.sum_of(r) + self.node(id).weight;
        self.node_mut(id).sum = s;
    }

    fn pull_to_root(&mut self, mut id: usize) {
        while id != NIL {
            self.pull(id);
            id = self.node(id).parent;
        }
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn root(&self) -> Option<usize> {
        (self.root != NIL).then_some(self.root)
    }

    pub fn total(&self) -> usize {
        self.sum_of(self.root)
    }

    pub fn get(&self, id: usize) -> &T {
        &self.node(id).val
    }

    pub fn get_mut(&mut self, id: usize) -> &mut T {
        &mut self.node_mut(id).val
    }

    pub fn weight(&self, id: usize) -> usize {
        self.node(id).weight
    }

    pub fn left(&self, id: usize) -> Option<usize> {
        let l = self.node(id).left;
        (l != NIL).then_some(l)
    }

    pub fn right(&self, id: usize) -> Option<usize> {
        let r = self.node(id).right;
        (r != NIL).then_some(r)
    }

    pub fn left_sum(&self, id: usize) -> usize {
        self.sum_of(self.node(id).left)
    }

    pub fn set_weight(&mut self, id: usize, weight: usize) {
        self.node_mut(id).weight = weight;
        self.pull_to_root(id);
    }

    fn set_child(&mut self, parent: usize, old: usize, new: usize) {
        if parent == NIL {
            self.root = new;
        } else {
            let p = self.node_mut(parent);
            if p.left == old {
                p.left = new;
            } else {
                p.right = new;
            }
        }
        if new != NIL {
            self.node_mut(new).parent = parent;
        }
    }

    /// Lifts `x` above its parent.
    fn rotate_up(&mut self, x: usize) {
        let p = self.node(x).parent;
        let g = self.node(p).parent;
        if self.node(p).left == x {
            let b = self.node(x).right;
            self.node_mut(p).left = b;
            if b != NIL {
                self.node_mut(b).parent = p;
            }
            self.node_mut(x).right = p;
        } else {
            let b = self.node(x).left;
            self.node_mut(p).right = b;
            if b != NIL {
                self.node_mut(b).parent = p;
            }
            self.node_mut(x).left = p;
        }
        self.node_mut(p).parent = x;
        self.set_child(g, p, x);
        self.pull(p);
        self.pull(x);
    }

    fn alloc(&mut self, val: T, weight: usize, parent: usize) -> usize {
        let prio = self.next_prio();
        let node = Node {
            val,
            weight,
            sum: weight,
            prio,
            left: NIL,
            right: NIL,
            parent,
        };
        self.live += 1;
        if let Some(id) = self.free.pop() {
            self.nodes[id] = Some(node);
            id
        } else {
            self.nodes.push(Some(node));
            self.nodes.len() - 1
        }
    }

    /// Inserts `val` unless a node compares equal. `cmp` orders the new
    /// value against a node's value. Returns `Ok(new)` or `Err(existing)`.
    pub fn insert_by(
        &mut self,
        val: T,
        weight: usize,
        mut cmp: impl FnMut(&T) -> Ordering,
    ) -> Result<usize, usize> {
        let mut parent = NIL;
        let mut go_left = false;
        let mut cur = self.root;
        while cur != NIL {
            match cmp(&self.node(cur).val) {
                Ordering::Equal => return Err(cur),
                Ordering::Less => {
                    parent = cur;
                    go_left = true;
                    cur = self.node(cur).left;
                }
                Ordering::Greater => {
                    parent = cur;
                    go_left = false;
                    cur = self.node(cur).right;
                }
            }
        }
        let id = self.alloc(val, weight, parent);
        if parent == NIL {
            self.root = id;
        } else if go_left {
            self.node_mut(parent).left = id;
        } else {
            self.node_mut(parent).right = id;
        }
        while self.node(id).parent != NIL {
            let p = self.node(id).parent;
            if self.node(p).prio >= self.node(id).prio {
                break;
            }
            self.rotate_up(id);
        }
        self.pull_to_root(id);
        Ok(id)
    }

    /// Detaches node `id` and returns its value.
    pub fn remove(&mut self, id: usize) -> T {
        // Rotate down until at most one child remains.
        loop {
            let (l, r) = {
                let n = self.node(id);
                (n.left, n.right)
            };
            if l == NIL || r == NIL {
                let child = if l == NIL { r } else { l };
                let parent = self.node(id).parent;
                self.set_child(parent, id, child);
                if parent != NIL {
                    self.pull_to_root(parent);
                }
                break;
            }
            let up = if self.node(l).prio > self.node(r).prio { l } else { r };
            self.rotate_up(up);
        }
        let node = self.nodes[id].take().expect("stale treap handle");
        self.free.push(id);
        self.live -= 1;
        node.val
    }

    /// Node whose cumulative weight range covers `r` (1-based), with the
    /// residual rank inside that node.
    pub fn select(&self, mut r: usize) -> Option<(usize, usize)> {
        let mut cur = self.root;
        while cur != NIL {
            let n = self.node(cur);
            let ls = self.sum_of(n.left);
            if r <= ls {
                cur = n.left;
            } else if r <= ls + n.weight {
                return Some((cur, r - ls));
            } else {
                r -= ls + n.weight;
                cur = n.right;
            }
        }
        None
    }

    /// Total weight strictly before node `id` in order.
    pub fn rank_of(&self, id: usize) -> usize {
        let mut acc = self.left_sum(id);
        let mut cur = id;
        let mut parent = self.node(cur).parent;
        while parent != NIL {
            let p = self.node(parent);
            if p.right == cur {
                acc += self.sum_of(p.left) + p.weight;
            }
            cur = parent;
            parent = p.parent;
        }
        acc
    }

    pub fn in_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.live);
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.node(cur).left;
            }
            let id = stack.pop().unwrap();
            out.push(id);
            cur = self.node(id).right;
        }
        out
    }

    #[cfg(test)]
    pub fn check_structure(&self) {
        fn walk<T>(t: &Treap<T>, id: usize, parent: usize) -> usize {
            if id == NIL {
                return 0;
            }
            let n = t.node(id);
            assert_eq!(n.parent, parent);
            for c in [n.left, n.right] {
                if c != NIL {
                    assert!(t.node(c).prio <= n.prio, "heap order");
                }
            }
            let s = walk(t, n.left, id) + walk(t, n.right, id) + n.weight;
            assert_eq!(s, n.sum, "subtree sum");
            s
        }
        walk(self, self.root, NIL);
    }
}

/// Ordered set of positions with rank and select, each `O(log n)` expected.
#[derive(Debug, Clone)]
pub(crate) struct OrderedSet {
    treap: Treap<usize>,
}

impl OrderedSet {
    pub fn new(seed: u64) -> Self {
        OrderedSet {
            treap: Treap::new(seed),
        }
    }

    pub fn len(&self) -> usize {
        self.treap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.treap.len() == 0
    }

    pub fn insert(&mut self, x: usize) -> bool {
        self.treap.insert_by(x, 1, |v| x.cmp(v)).is_ok()
    }

    fn find(&self, x: usize) -> Option<usize> {
        let mut cur = self.treap.root;
        while cur != NIL {
            let n = self.treap.node(cur);
            match x.cmp(&n.val) {
                Ordering::Equal => return Some(cur),
                Ordering::Less => cur = n.left,
                Ordering::Greater => cur = n.right,
            }
        }
        None
    }

    pub fn remove(&mut self, x: usize) -> bool {
        match self.find(x) {
            Some(id) => {
                self.treap.remove(id);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.find(x).is_some()
    }

    /// Number of elements strictly less than `x`.
    pub fn count_less(&self, x: usize) -> usize {
        let mut acc = 0;
        let mut cur = self.treap.root;
        while cur != NIL {
            let n = self.treap.node(cur);
            if x <= n.val {
                cur = n.left;
            } else {
                acc += self.treap.sum_of(n.left) + 1;
                cur = n.right;
            }
        }
        acc
    }

    /// The `r`-th smallest element, 1-based.
    pub fn select(&self, r: usize) -> Option<usize> {
        self.treap.select(r).map(|(id, _)| *self.treap.get(id))
    }

    /// Smallest element strictly greater than `x`.
    pub fn successor(&self, x: usize) -> Option<usize> {
        let mut best = None;
        let mut cur = self.treap.root;
        while cur != NIL {
            let n = self.treap.node(cur);
            if n.val > x {
                best = Some(n.val);
                cur = n.left;
            } else {
                cur = n.right;
            }
        }
        best
    }

    pub fn first(&self) -> Option<usize> {
        self.select(1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.treap
            .in_order()
            .into_iter()
            .map(|id| *self.treap.get(id))
            .collect()
    }
}
