import numpy as np
h=6.62607015e-34; hbar=h/(2*np.pi); e=1.602176634e-19; kB=1.380649e-23; eps0=8.8541878128e-12
# lambda_LC SI
EC=1.8e9*h; CQ=5e-15; wLC=2*np.pi*1.94e9; CT=340e-15
lam=4*EC*CQ/(e*hbar)*np.sqrt(hbar*wLC/(2*CT)); print("lamLC/2pi",repr(lam/(2*np.pi)))
# lambda max
for beta in [0.2,1.0]:
  lm=8*EC/hbar*np.sqrt(beta*hbar*2*np.pi*3e8*1.8e-16/(27*e**2)); print("lmax",beta,repr(lm/(2*np.pi)))
# rad damping
dE=h*5e9; G=dE**2*(5e-15)**2*50/(hbar**2*5e-14); print("T1",repr(1/G))
f=3e6;T=0.02; print("Nth",repr(1/np.expm1(h*f/(kB*T))))
# beam
a=4.73; w=200e-9;t=100e-9;L=1.8e-6;rho=2700;E=70e9
om=a**2*w/L**2*np.sqrt(E/(12*rho)); f=om/(2*np.pi); print("f1",repr(f))
alpha=0.3964779201605143; m=alpha*rho*w*L*t; xzp=np.sqrt(hbar/(2*m*om)); print("m",m,"xzp",repr(xzp))
k=m*om**2; d=70e-9; print("k",k,"Vsn 180aF",repr(np.sqrt(8*k*d**2/(27*1.8e-16))))
Cpp=eps0*t*L/d; print("Cpp",Cpp)
dcdx=eps0*t/d**2*0.5231643602954763*L; print("dcdx",dcdx)
lam=-4*(1.8e9*h/hbar)*dcdx*(1.0/e)*xzp/(2*np.pi); print("lambda per volt /2pi",repr(lam))
# chi ref
print("chi ref",1e6**2*1.3e10**2/(5e9*(5e9**2-6e7**2)))
