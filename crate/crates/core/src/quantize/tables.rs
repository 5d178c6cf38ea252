// Positive halves of the Gaussian Lloyd-Max tables for 1..=8 bits,
// regenerated and checked by `embedded_tables_match_regeneration`.
pub(crate) const POSITIVE_CENTROIDS: [&[f64]; 8] = [
    &[7.97884560802865406e-1],
    &[4.52780034588752489e-1, 1.51041760840052874e0],
    &[
        2.45094178768183402e-1,
        7.56005280725166817e-1,
        1.34390927784914371e0,
        2.15194570388958839e0,
    ],
    &[
        1.28395029482480605e-1,
        3.88048298411193648e-1,
        6.56759116821581168e-1,
        9.42340454268776329e-1,
        1.25623119478323986e0,
        1.61804638330118555e0,
        2.06901722386475173e0,
        2.73258956863478097e0,
    ],
    &[
        6.58896590246355746e-2,
        1.98051827445118983e-1,
        3.31378302100130917e-1,
        4.66699517950829146e-1,
        6.04933617713449001e-1,
        7.47135696241485125e-1,
        8.94565108933218611e-1,
        1.04878331061989893e0,
        1.21180437063489155e0,
        1.38634032913197247e0,
        1.57622806787954062e0,
        1.78723320690522391e0,
        2.02872838875629302e0,
        2.31773939395757855e0,
        2.69111956782915840e0,
        3.26073248498205182e0,
    ],
    &[
        3.34095048818599388e-2,
        1.00278284846455901e-1,
        1.67296895964192033e-1,
        2.34566975020073148e-1,
        3.02192833195094046e-1,
        3.70282629286098175e-1,
        4.38949652967625170e-1,
        5.08313759580099167e-1,
        5.78503006678058984e-1,
        6.49655554816230829e-1,
        7.21921912043718583e-1,
        7.95467625175207749e-1,
        8.70476553888069771e-1,
        9.47154910255801230e-1,
        1.02573631292629908e0,
        1.10648820189886221e0,
        1.18972010291858510e0,
        1.27579444637805750e0,
        1.36514097883773644e0,
        1.45827633301078108e0,
        1.55583118251105645e0,
        1.65858885793524435e0,
        1.76754184042571905e0,
        1.88397719810348718e0,
        2.00961100055169473e0,
        2.14681017563086218e0,
        2.29898116920659268e0,
        2.47130475821274809e0,
        2.67227379731459758e0,
        2.91740675463947818e0,
        3.24043702134798250e0,
        3.74410124073533712e0,
    ],
    &[
        1.68281664949053132e-2,
        5.04908550798721101e-2,
        8.41726272654588908e-2,
        1.17886261618082216e-1,
        1.51644621358768439e-1,
        1.85460689041556853e-1,
        2.19347602061486346e-1,
        2.53318689247531592e-1,
        2.87387508810922232e-1,
        3.21567887937251162e-1,
        3.55873964333607906e-1,
        3.90320230069582663e-1,
        4.24921578083406692e-1,
        4.59693351764179692e-1,
        4.94651398066710990e-1,
        5.29812124670596130e-1,
        5.65192561758999124e-1,
        6.00810429068483809e-1,
        6.36684208950568653e-1,
        6.72833226290678321e-1,
        7.09277736254991908e-1,
        7.46039020983336409e-1,
        7.83139496521427114e-1,
        8.20602831495231277e-1,
        8.58454079280508209e-1,
        8.96719825720906250e-1,
        9.35428354810461160e-1,
        9.74609835194897411e-1,
        1.01429653087999183e0,
        1.05452304018686083e0,
        1.09532656779560567e0,
        1.13674723570843650e0,
        1.17882844019240940e0,
        1.22161726329924658e0,
        1.26516494949346647e0,
        1.30952746036964873e0,
        1.35476612356683290e0,
        1.40094839600973420e0,
        1.44814876682395544e0,
        1.49644983210003280e0,
        1.54594358270412768e0,
        1.59673295837898910e0,
        1.64893373764166395e0,
        1.70267685520379475e0,
        1.75811126939834605e0,
        1.81540754527900172e0,
        1.87476238063245337e0,
        1.93640439144080845e0,
        2.00060160528248820e0,
        2.06767131021192663e0,
        2.13799321394596387e0,
        2.21202735498144687e0,
        2.29033900129214540e0,
        2.37363411119756007e0,
        2.46281127686345469e0,
        2.55904036793918310e0,
        2.66388638807260492e0,
        2.77951411082292754e0,
        2.90904693028829886e0,
        3.05724601164986121e0,
        3.23193307034576671e0,
        3.44743014316481933e0,
        3.73493652393040021e0,
        4.18969404706621695e0,
    ],
    &[
        8.44618731551423710e-3,
        2.53393653794844777e-2,
        4.22349542772911188e-2,
        5.91345630160199642e-2,
        7.60398032827489384e-2,
        9.29522905230659169e-2,
        1.09873645026048308e-1,
        1.26805493017667359e-1,
        1.43749467764520578e-1,
        1.60707210689861602e-1,
        1.77680372503925155e-1,
        1.94670614350571508e-1,
        2.11679608972300648e-1,
        2.28709041896097115e-1,
        2.45760612641761383e-1,
        2.62836035955729186e-1,
        2.79937043072194247e-1,
        2.97065383004416206e-1,
        3.14222823868617662e-1,
        3.31411154243210659e-1,
        3.48632184566242120e-1,
        3.65887748574133920e-1,
        3.83179704784456010e-1,
        4.00509938026680723e-1,
        4.17880361023696689e-1,
        4.35292916028271415e-1,
        4.52749576518033658e-1,
        4.70252348953269561e-1,
        4.87803274601827597e-1,
        5.05404431435690138e-1,
        5.23057936104160182e-1,
        5.40765945989130636e-1,
        5.58530661347552027e-1,
        5.76354327547632717e-1,
        5.94239237404463050e-1,
        6.12187733622727936e-1,
        6.30202211352794750e-1,
        6.48285120869042109e-1,
        6.66438970377905782e-1,
        6.84666328965257809e-1,
        7.02969829692578263e-1,
        7.21352172852343876e-1,
        7.39816129393967570e-1,
        7.58364544532323381e-1,
        7.77000341552061657e-1,
        7.95726525821762620e-1,
        8.14546189033323320e-1,
        8.33462513683207673e-1,
        8.52478777813307942e-1,
        8.71598360031603958e-1,
        8.90824744832718229e-1,
        9.10161528242869888e-1,
        9.29612423813159228e-1,
        9.49181268989467641e-1,
        9.68872031888470375e-1,
        9.88688818512591827e-1,
        1.00863588043993535e0,
        1.02871762302827974e0,
        1.04893861417633572e0,
        1.06930359368929806e0,
        1.08981748330134987e0,
        1.11048539741197061e0,
        1.13131265459948427e0,
        1.15230478998187502e0,
        1.17346756850211031e0,
        1.19480699922366362e0,
        1.21632935073150628e0,
        1.23804116774420203e0,
        1.25994928905491821e0,
        1.28206086693264987e0,
        1.30438338813052845e0,
        1.32692469666550239e0,
        1.34969301855359425e0,
        1.37269698870819146e0,
        1.39594568023385901e0,
        1.41944863638007801e0,
        1.44321590545124234e0,
        1.46725807901130545e0,
        1.49158633376598071e0,
        1.51621247755889410e0,
        1.54114899998072974e0,
        1.56640912816101174e0,
        1.59200688839854831e0,
        1.61795717438350661e0,
        1.64427582288217233e0,
        1.67097969789220424e0,
        1.69808678443937433e0,
        1.72561629338130262e0,
        1.75358877881487807e0,
        1.78202626996293856e0,
        1.81095241974986876e0,
        1.84039267268207807e0,
        1.87037445514128975e0,
        1.90092739180223358e0,
        1.93208355262466225e0,
        1.96387773578494973e0,
        1.99634779304810484e0,
        2.02953500549988952e0,
        2.06348451934700439e0,
        2.09824585375684469e0,
        2.13387349559919581e0,
        2.17042759967192378e0,
        2.20797481781796590e0,
        2.24658928666062119e0,
        2.28635381203408850e0,
        2.32736129934208158e0,
        2.36971649413968466e0,
        2.41353811782528460e0,
        2.45896151183918876e0,
        2.50614194381386879e0,
        2.55525878624326319e0,
        2.60652086111955184e0,
        2.66017336650386138e0,
        2.71650698590856843e0,
        2.77587006694912386e0,
        2.83868520835452465e0,
        2.90547233307649799e0,
        2.97688157144123888e0,
        3.05374146281216952e0,
        3.13713198790166681e0,
        3.22849967709305652e0,
        3.32984794773265280e0,
        3.44407116827420801e0,
        3.57558747620133577e0,
        3.73166578171177088e0,
        3.92563732194115600e0,
        4.18659500415225594e0,
        4.60353520761078361e0,
    ],
];
