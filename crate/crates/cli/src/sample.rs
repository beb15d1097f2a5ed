use crate::args::{points, SampleArgs};
use crate::error::CliResult;
use crate::output::{Sink, Table};
use crate::targets::Target;

pub fn run(args: &SampleArgs) -> CliResult<()> {
    let mut t = Target::parse(&args.target, &args.params)?;
    let iv = args.interval.resolve(t.domain())?;
    t.set_domain(iv);
    let table = match &t {
        Target::Lissajous(p) => {
            let mut table = Table::new(["t", "x", "y"]);
            for s in iv.linspace(points(args.samples, "--samples")?) {
                table.rows.push(vec![s, p.x(s), p.y(s)]);
            }
            table
        }
        _ => {
            let f = t.surface().expect("surface target");
            let axis = iv.linspace(points(args.grid, "--grid")?);
            let mut table = Table::new(["x", "y", "f"]);
            for &x in &axis {
                for &y in &axis {
                    table.rows.push(vec![x, y, f(x, y)]);
                }
            }
            table
        }
    };
    Sink::open(args.output.as_deref())?.write_table(&table, args.format)
}
